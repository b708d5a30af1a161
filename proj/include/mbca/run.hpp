#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mbca/automaton.hpp"

namespace mbca {

/// Ultimately periodic word prefix . period^omega over a machine's letter ids.
struct UPWord {
  std::vector<LetterId> prefix;
  std::vector<LetterId> period;

  friend bool operator==(const UPWord&, const UPWord&) = default;
};

/// Parses "u ; v" with space-separated letters; u may be empty, v may not.
UPWord parse_upword(const Mbca& m, std::string_view text);
std::string format_upword(const Mbca& m, const UPWord& w);

/// Same omega-word with the prefix rolled into the period as far as possible
/// and the period reduced to its primitive root.
UPWord normalize(const UPWord& w);

enum class RunOutcome { Blocked, Periodic, Ramp };

/// A finite window of a run that fully determines its infinite behaviour.
///
/// For Periodic and Ramp outcomes, the segment configs[cycle_start .. cycle_start+cycle_len)
/// repeats forever with every counter raised by `shift` per repetition (shift == 0 for
/// Periodic). configs[i] is the configuration after reading i letters.
struct RunTrace {
  std::vector<Configuration> configs;
  RunOutcome outcome = RunOutcome::Blocked;
  std::size_t blocked_at = 0;  // index of the letter that could not be read
  std::size_t cycle_start = 0;
  std::size_t cycle_len = 0;
  Counter shift = 0;
  StateSet inf_set = 0;

  /// Configuration at any position, extrapolating through the repeating segment.
  Configuration at(std::size_t i) const;
};

RunTrace run(const Mbca& m, const UPWord& w);
bool member(const Mbca& m, const UPWord& w);

enum class LoopKind { Plus, Equal };

std::string_view to_string(LoopKind k);

struct LoopWitness {
  std::size_t anchor_index = 0;
  std::size_t close_index = 0;
  StateId anchor_state = 0;
  Counter anchor_counter = 0;
  StateSet visited = 0;
  LoopKind kind = LoopKind::Equal;
  Level level = Level::I;
};

/// Local-minimum anchored loop realizing the run's Inf set. Requires a non-blocked trace.
LoopWitness extract_loop_witness(const RunTrace& t);

}  // namespace mbca
