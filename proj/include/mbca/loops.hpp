#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "mbca/automaton.hpp"
#include "mbca/run.hpp"

namespace mbca {

/// Anchored loop L(q, I|Z0, F, +|=) together with a replayable cycle.
struct LoopDescriptor {
  StateId anchor = 0;
  Level level = Level::I;
  StateSet essential_set = 0;
  LoopKind delta_kind = LoopKind::Equal;
  bool positive = false;  // essential_set is in the Muller family
  Counter dip = 0;        // deepest drop below the anchor counter along `cycle`
  Counter min_anchor_counter = 0;
  std::vector<LetterId> cycle;  // from the anchor back to it, visiting exactly essential_set
};

/// Per-state thresholds n_q for the filtered analysis of a derived machine:
/// a loop is kept only when its anchor is reachable with counter >= n_q.
/// States without a value are not admissible anchors.
struct LoopFilter {
  std::vector<std::optional<Counter>> thresholds;
};

struct EssentialSet {
  StateSet set = 0;
  bool positive = false;

  friend auto operator<=>(const EssentialSet&, const EssentialSet&) = default;
};

/// Strongly connected state sets (inside the reachable part) that may carry a loop.
std::vector<StateSet> candidate_sets(const Mbca& m);

/// Loop descriptors. With `anchored`, only loops whose anchor is reachable from the initial
/// configuration at a sufficient counter are kept; otherwise every covering cycle counts.
std::vector<LoopDescriptor> loops(const Mbca& m, const LoopFilter* filter = nullptr, bool anchored = true);

std::vector<EssentialSet> essential_sets(const std::vector<LoopDescriptor>& ds);
std::vector<EssentialSet> essential_sets(const Mbca& m);

/// Least anchor counter at which the loop may be entered from the initial configuration.
Counter entry_counter(const LoopDescriptor& d, const LoopFilter* filter = nullptr);

/// u.v^omega whose run ends in the loop; throws AnchorUnreachable.
UPWord witness_word(const Mbca& m, const LoopDescriptor& d, const LoopFilter* filter = nullptr);

std::string describe(const Mbca& m, const LoopDescriptor& d);

}  // namespace mbca
