#include "mbca/reach.hpp"

#include <algorithm>
#include <deque>

namespace mbca {

bool ReachSet::contains(StateId q, Counter v) const {
  const auto& ps = per_state[q];
  if (ps.tail && v >= ps.tail->threshold) {
    const Counter r = (v - ps.tail->threshold) % ps.tail->period;
    return std::binary_search(ps.tail->residues.begin(), ps.tail->residues.end(), r);
  }
  return ps.finite.count(v) != 0;
}

bool ReachSet::reachable(StateId q) const {
  return !per_state[q].finite.empty() || per_state[q].tail.has_value();
}

std::optional<Counter> ReachSet::least_at_least(StateId q, Counter lo) const {
  const auto& ps = per_state[q];
  if (auto it = ps.finite.lower_bound(lo); it != ps.finite.end()) return *it;
  if (!ps.tail) return std::nullopt;
  const auto& t = *ps.tail;
  const Counter start = std::max(lo, t.threshold);
  for (Counter v = start; v < start + t.period; ++v)
    if (contains(q, v)) return v;
  return std::nullopt;
}

StateSet ReachSet::reachable_states() const {
  StateSet s = 0;
  for (StateId q = 0; q < per_state.size(); ++q)
    if (reachable(q)) s |= singleton(q);
  return s;
}

ReachBounds::ReachBounds(const Mbca& m) {
  const Counter k = static_cast<Counter>(m.num_states());
  const Counter d = m.max_increment();
  cutoff = (k + 1) * (d + 1) * (k + 2);
  window = 3 * cutoff + 32;
}

namespace {

struct Explored {
  Counter base;
  Counter cap;
  std::size_t width;
  std::vector<char> seen;  // [state * width + (counter - 0)]
  std::vector<std::int64_t> parent;
  std::vector<LetterId> via;

  bool has(StateId q, Counter c) const { return seen[q * width + c] != 0; }
};

Explored explore(const Mbca& m, Configuration from, Counter cap, bool track) {
  Explored e;
  e.base = from.counter;
  e.cap = cap;
  e.width = static_cast<std::size_t>(cap + 1);
  e.seen.assign(m.num_states() * e.width, 0);
  if (track) {
    e.parent.assign(e.seen.size(), -1);
    e.via.assign(e.seen.size(), 0);
  }
  std::deque<Configuration> queue{from};
  e.seen[from.state * e.width + from.counter] = 1;
  while (!queue.empty()) {
    const Configuration c = queue.front();
    queue.pop_front();
    for (LetterId a = 0; a < m.num_letters(); ++a) {
      auto n = step(m, c, a);
      if (!n || n->counter > cap) continue;
      const std::size_t idx = n->state * e.width + n->counter;
      if (e.seen[idx]) continue;
      e.seen[idx] = 1;
      if (track) {
        e.parent[idx] = static_cast<std::int64_t>(c.state * e.width + c.counter);
        e.via[idx] = a;
      }
      queue.push_back(*n);
    }
  }
  return e;
}

}  // namespace

ReachSet reach(const Mbca& m, Configuration from) {
  const ReachBounds b(m);
  const Counter cap = from.counter + b.window;
  const Explored e = explore(m, from, cap, false);

  // Values above `from + cutoff` only occur when a positive cycle can be pumped; the band
  // [lo, hi] sits clear of both the irregular start and the truncation at `cap`.
  const Counter lo = from.counter + b.cutoff;
  const Counter hi = cap - 2 * (static_cast<Counter>(m.num_states()) + 1) * (m.max_increment() + 1) - 8;

  ReachSet out;
  out.per_state.resize(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) {
    auto& ps = out.per_state[q];
    Counter top = -1;
    for (Counter v = cap; v >= 0; --v)
      if (e.has(q, v)) {
        top = v;
        break;
      }
    if (top < 0) continue;
    if (top <= lo) {
      for (Counter v = 0; v <= top; ++v)
        if (e.has(q, v)) ps.finite.insert(v);
      continue;
    }
    Counter period = 1;
    for (; period <= (hi - lo) / 3; ++period) {
      bool ok = true;
      for (Counter v = lo; v + period <= hi && ok; ++v) ok = e.has(q, v) == e.has(q, v + period);
      if (ok) break;
    }
    Counter start = lo;
    while (start > 0 && e.has(q, start - 1) == e.has(q, start - 1 + period)) --start;
    ReachSet::Tail tail{start, period, {}};
    for (Counter r = 0; r < period; ++r)
      if (e.has(q, start + r)) tail.residues.push_back(r);
    for (Counter v = 0; v < start; ++v)
      if (e.has(q, v)) ps.finite.insert(v);
    ps.tail = std::move(tail);
  }
  return out;
}

bool reachable_unbounded(const Mbca& m, Configuration from, StateId q) {
  return reach(m, from).unbounded(q);
}

std::optional<std::vector<LetterId>> find_path(const Mbca& m, Configuration from, StateId target,
                                               Counter min_counter, std::optional<Counter> exact) {
  const ReachBounds b(m);
  const Counter cap = std::max(from.counter, min_counter) + b.window;
  const Explored e = explore(m, from, cap, true);
  auto ok = [&](Counter v) { return exact ? v == *exact : v >= min_counter; };
  // Prefer the lowest qualifying counter; the BFS tree gives a shortest word to it.
  for (Counter v = 0; v <= cap; ++v) {
    if (!ok(v) || !e.has(target, v)) continue;
    std::vector<LetterId> word;
    std::int64_t idx = static_cast<std::int64_t>(target * e.width + v);
    const auto root = static_cast<std::int64_t>(from.state * e.width + from.counter);
    while (idx != root) {
      word.push_back(e.via[idx]);
      idx = e.parent[idx];
    }
    std::reverse(word.begin(), word.end());
    return word;
  }
  return std::nullopt;
}

std::optional<Counter> least_monotone(Counter limit, const std::function<bool(Counter)>& pred) {
  if (!pred(limit)) return std::nullopt;
  Counter lo = 0, hi = limit;
  while (lo < hi) {
    const Counter mid = lo + (hi - lo) / 2;
    if (pred(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

namespace {

bool satisfies(const ReachSet& r, const std::vector<ReachPredicate>& preds) {
  for (const auto& p : preds) {
    if (p.unbounded ? !r.unbounded(p.target) : !r.least_at_least(p.target, p.at_least)) return false;
  }
  return true;
}

}  // namespace

std::optional<Counter> min_counter_to(const Mbca& m, StateId source,
                                      const std::vector<ReachPredicate>& preds) {
  Counter need = 0;
  for (const auto& p : preds) need = std::max(need, p.at_least);
  const Counter limit = need + ReachBounds(m).cutoff;
  return least_monotone(limit, [&](Counter c) { return satisfies(reach(m, {source, c}), preds); });
}

std::vector<std::optional<Counter>> min_counter_map(const Mbca& m,
                                                    const std::vector<ReachPredicate>& preds) {
  std::vector<std::optional<Counter>> out(m.num_states());
  for (StateId q = 0; q < m.num_states(); ++q) out[q] = min_counter_to(m, q, preds);
  return out;
}

std::shared_ptr<const ReachSet> ReachOracle::from(Configuration c) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(c); it != cache_.end()) return it->second;
  }
  auto r = std::make_shared<const ReachSet>(reach(m_, c));
  std::lock_guard lock(mu_);
  return cache_.emplace(c, std::move(r)).first->second;
}

}  // namespace mbca
