#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbca/automaton.hpp"
#include "mbca/loops.hpp"
#include "mbca/reach.hpp"

namespace mbca {

/// The ordinal omega*p + s.
struct OrdinalW2 {
  Counter p = 0;
  Counter s = 0;

  friend auto operator<=>(const OrdinalW2&, const OrdinalW2&) = default;
  friend bool operator==(const OrdinalW2&, const OrdinalW2&) = default;
};

/// Renders as `s`, `w*p` or `w*p+s`.
std::string to_string(const OrdinalW2& a);
/// Accepts the rendered forms plus a bare `w` for omega.
std::optional<OrdinalW2> parse_ordinal(std::string_view text);

struct Chain {
  std::vector<StateSet> sets;  // strictly increasing, alternating membership in the family
  bool positive = false;       // sign of sets.front()
  StateSet site = 0;
};

struct OmegaLink {
  LoopDescriptor pos_loop;  // chain sign +
  LoopDescriptor neg_loop;  // chain sign -
};

struct Superchain {
  OrdinalW2 length;
  std::vector<Chain> finite_part;
  std::vector<OmegaLink> omega_part;
  bool positive = false;
  std::optional<LoopDescriptor> anchor_loop;  // the entry loop when finite_part is empty
};

struct InvariantTriple {
  int m = 0;
  OrdinalW2 n;
  int s = 0;  // +1, -1, or 0 when both signs reach n
  char coarse_class = 'E';
};

/// Loop, chain and superchain analysis of one machine, optionally restricted by
/// per-state thresholds (the filtered analysis of a derived machine).
/// Results are memoized lazily; one instance must not be queried from several threads.
class Analysis {
 public:
  explicit Analysis(Mbca m, std::optional<LoopFilter> filter = std::nullopt);
  Analysis(const Analysis&) = delete;
  Analysis& operator=(const Analysis&) = delete;

  const Mbca& machine() const { return *m_; }
  const LoopFilter* filter() const { return filter_ ? &*filter_ : nullptr; }
  const std::vector<LoopDescriptor>& loops() const { return loops_; }
  const std::vector<EssentialSet>& essential_sets() const { return essential_; }

  /// Length of the longest alternating chain ending in the essential set f (0 if f is not essential).
  int chain_length(StateSet f) const;
  /// Sign of the first element of any longest chain ending in f.
  bool chain_sign(StateSet f) const;
  int m() const { return m_value_; }

  std::vector<Chain> chains() const;
  std::vector<OmegaLink> omega_links() const;

  /// Longest superchain of the given sign starting from configuration x (0 when none).
  OrdinalW2 best(Configuration x, bool positive) const;
  InvariantTriple invariants() const;
  std::vector<Superchain> superchains() const;

  /// Counter ceiling for configurations that anchor superchain nodes.
  Counter node_ceiling() const { return ceiling_; }
  const ReachOracle& oracle() const { return *oracle_; }

 private:
  struct Node {
    StateId anchor;
    StateSet set;
    Counter counter;
    bool sign;
    std::size_t loop;  // index into structural_
  };
  struct Omega {
    std::size_t pos_loop, neg_loop;
    StateSet pos_set, neg_set;
  };
  enum class Choice { Alone, Next, Enter };
  struct Value {
    OrdinalW2 length;
    Choice choice = Choice::Alone;
    std::size_t target = 0;  // node or omega index
  };

  void build_nodes();
  void build_omegas();
  OrdinalW2 omega_path(std::size_t w) const;
  const Value& node_value(std::size_t u) const;
  bool can_enter(std::size_t w, Configuration from, bool sign) const;
  std::vector<std::size_t> reachable_nodes(Configuration from) const;
  Chain chain_for(StateSet f) const;
  Superchain assemble(Configuration start, bool sign) const;

  std::shared_ptr<const Mbca> m_;
  std::optional<LoopFilter> filter_;
  std::unique_ptr<ReachOracle> oracle_;
  std::vector<LoopDescriptor> loops_;
  std::vector<LoopDescriptor> structural_;  // every covering cycle, anchored or not
  std::vector<EssentialSet> essential_;
  std::map<StateSet, int> length_;
  int m_value_ = 0;
  Counter ceiling_ = 0;

  std::vector<Node> nodes_;
  std::map<std::pair<StateId, StateSet>, std::vector<std::size_t>> nodes_at_;  // sorted by counter
  std::vector<Omega> omegas_;
  std::vector<std::vector<std::size_t>> omega_next_;
  // Machines with one side of an omega-link removed, for entry checks: [omega][sign].
  std::vector<std::array<std::unique_ptr<ReachOracle>, 2>> entry_oracles_;
  std::vector<std::shared_ptr<const Mbca>> entry_machines_;

  mutable std::vector<std::optional<Value>> node_memo_;
  mutable std::vector<char> node_busy_;
  mutable std::vector<std::optional<OrdinalW2>> omega_memo_;
  mutable std::vector<std::optional<std::size_t>> omega_best_next_;
  mutable std::vector<char> omega_busy_;
};

/// "+" or "-".
inline std::string_view sign_symbol(bool positive) { return positive ? "+" : "-"; }

}  // namespace mbca
