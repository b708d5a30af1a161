#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "mbca/automaton.hpp"

namespace mbca {

/// Reachable counter values per state, as a finite part plus an eventually periodic tail.
struct ReachSet {
  struct Tail {
    Counter threshold = 0;
    Counter period = 1;
    std::vector<Counter> residues;  // offsets in [0, period), sorted
  };
  struct PerState {
    std::set<Counter> finite;  // all below tail->threshold when a tail exists
    std::optional<Tail> tail;
  };

  std::vector<PerState> per_state;

  bool contains(StateId q, Counter v) const;
  bool reachable(StateId q) const;
  bool unbounded(StateId q) const { return per_state[q].tail.has_value(); }
  /// Smallest reachable value at q that is >= lo.
  std::optional<Counter> least_at_least(StateId q, Counter lo) const;
  StateSet reachable_states() const;
};

/// Search limits derived from the machine size; every counter-reachability routine
/// uses the same cutoff so their answers stay consistent.
struct ReachBounds {
  Counter cutoff;  // (|K|+1)(d+1)(|K|+2), d = max positive delta
  Counter window;  // explored height above the starting counter
  explicit ReachBounds(const Mbca& m);
};

ReachSet reach(const Mbca& m, Configuration from);
bool reachable_unbounded(const Mbca& m, Configuration from, StateId q);

/// Letters leading from `from` to some configuration at `target` satisfying
/// `min_counter <= counter` (or `counter == exact` when given). Shortest such word.
std::optional<std::vector<LetterId>> find_path(const Mbca& m, Configuration from, StateId target,
                                               Counter min_counter,
                                               std::optional<Counter> exact = std::nullopt);

struct ReachPredicate {
  StateId target = 0;
  Counter at_least = 0;
  bool unbounded = false;
};

/// Least starting counter at `source` from which every predicate holds.
std::optional<Counter> min_counter_to(const Mbca& m, StateId source,
                                      const std::vector<ReachPredicate>& preds);
/// The same for every state of m.
std::vector<std::optional<Counter>> min_counter_map(const Mbca& m,
                                                    const std::vector<ReachPredicate>& preds);

/// Least c in [0, limit] with pred(c), for predicates monotone in c.
std::optional<Counter> least_monotone(Counter limit, const std::function<bool(Counter)>& pred);

/// Memoized reach() for one machine; safe for concurrent callers.
class ReachOracle {
 public:
  explicit ReachOracle(const Mbca& m) : m_(m), bounds_(m) {}

  const Mbca& machine() const { return m_; }
  const ReachBounds& bounds() const { return bounds_; }
  std::shared_ptr<const ReachSet> from(Configuration c) const;

 private:
  const Mbca& m_;
  ReachBounds bounds_;
  mutable std::mutex mu_;
  mutable std::map<Configuration, std::shared_ptr<const ReachSet>> cache_;
};

}  // namespace mbca
