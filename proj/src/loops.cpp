#include "mbca/loops.hpp"

#include <algorithm>
#include <climits>
#include <deque>

#include "mbca/reach.hpp"

namespace mbca {

namespace {

// successors[q]: states reachable in one letter through either level.
std::vector<StateSet> successors(const Mbca& m) {
  std::vector<StateSet> out(m.num_states(), 0);
  for (StateId q = 0; q < m.num_states(); ++q)
    for (LetterId a = 0; a < m.num_letters(); ++a)
      for (Level lv : {Level::Z, Level::I})
        if (const auto& t = m.entry(q, a, lv)) out[q] |= singleton(t->target);
  return out;
}

StateSet closure_within(const std::vector<StateSet>& succ, StateId from, StateSet inside) {
  StateSet seen = singleton(from), frontier = seen;
  while (frontier) {
    StateSet next = 0;
    for (StateId q = 0; q < succ.size(); ++q)
      if (contains(frontier, q)) next |= succ[q] & inside;
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

// True when every state of s reaches every other through a nonempty path inside s.
bool strongly_connected(const std::vector<StateSet>& succ, StateSet s) {
  if (!s) return false;
  const auto q = static_cast<StateId>(std::countr_zero(s));
  if (popcount(s) == 1) return (succ[q] & s) != 0;
  if (closure_within(succ, q, s) != s) return false;
  for (StateId p = 0; p < succ.size(); ++p)
    if (contains(s, p) && !contains(closure_within(succ, p, s), q)) return false;
  return true;
}

struct Local {
  std::vector<StateId> states;
  std::vector<int> index;  // global -> local, -1 outside
  int size() const { return static_cast<int>(states.size()); }
};

Local localize(const Mbca& m, StateSet f) {
  Local l;
  l.index.assign(m.num_states(), -1);
  for (StateId q = 0; q < m.num_states(); ++q)
    if (contains(f, q)) {
      l.index[q] = static_cast<int>(l.states.size());
      l.states.push_back(q);
    }
  return l;
}

struct Found {
  Counter offset = 0;
  Counter dip = 0;
  std::vector<LetterId> cycle;
};

struct ILevelResult {
  std::optional<Found> plus, zero, minus;
};

// Minimal-dip covering cycles at the anchor through nonzero-level entries, one per sign of the
// net counter change, using a bucket queue on the running dip.
ILevelResult search_nonzero(const Mbca& m, StateSet f, StateId anchor) {
  const Local loc = localize(m, f);
  const int L = loc.size();
  const Counter delta = std::max(1, m.max_abs_delta());
  const Counter upper = (static_cast<Counter>(L) * (L + 1) + 2) * (delta + 1);
  const Counter lower = upper;  // offsets kept in [-lower, upper]
  const std::size_t range = static_cast<std::size_t>(upper + lower + 1);
  const std::size_t masks = std::size_t{1} << L;
  const std::size_t nodes = static_cast<std::size_t>(L) * masks * range;
  const StateSet full_local = static_cast<StateSet>(masks - 1);

  auto id = [&](int s, std::size_t mask, Counter off) {
    return (static_cast<std::size_t>(s) * masks + mask) * range + static_cast<std::size_t>(off + lower);
  };
  std::vector<std::int32_t> dist(nodes, INT32_MAX);
  std::vector<std::int64_t> parent(nodes, -1);
  std::vector<LetterId> via(nodes, 0);
  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(lower) + 1);

  const int qa = loc.index[anchor];
  const std::size_t start = id(qa, std::size_t{1} << qa, 0);
  dist[start] = 0;
  buckets[0].push_back(start);

  struct Goal {
    std::size_t from;
    LetterId letter;
    Counter offset;
    Counter dip;
  };
  std::optional<Goal> best[3];  // minus, zero, plus

  for (std::size_t level = 0; level < buckets.size(); ++level) {
    bool all = true;
    for (auto& g : best) all = all && g && g->dip <= static_cast<Counter>(level);
    if (all) break;
    for (std::size_t k = 0; k < buckets[level].size(); ++k) {
      const std::size_t node = buckets[level][k];
      if (dist[node] != static_cast<std::int32_t>(level)) continue;
      const std::size_t off_idx = node % range;
      const std::size_t mask = (node / range) % masks;
      const int s = static_cast<int>(node / range / masks);
      const Counter off = static_cast<Counter>(off_idx) - lower;
      for (LetterId a = 0; a < m.num_letters(); ++a) {
        const auto& t = m.entry(loc.states[s], a, Level::I);
        if (!t || loc.index[t->target] < 0) continue;
        const int ns = loc.index[t->target];
        const Counter noff = off + t->delta;
        if (noff > upper || noff < -lower) continue;
        const Counter nd = std::max<Counter>(static_cast<Counter>(level), -noff);
        const std::size_t nmask = mask | (std::size_t{1} << ns);
        if (ns == qa && nmask == full_local) {
          auto& g = best[noff < 0 ? 0 : noff == 0 ? 1 : 2];
          if (!g || nd < g->dip) g = Goal{node, a, noff, nd};
        }
        const std::size_t next = id(ns, nmask, noff);
        if (nd < dist[next]) {
          dist[next] = static_cast<std::int32_t>(nd);
          parent[next] = static_cast<std::int64_t>(node);
          via[next] = a;
          buckets[static_cast<std::size_t>(nd)].push_back(next);
        }
      }
    }
  }

  auto rebuild = [&](const Goal& g) {
    Found f{g.offset, g.dip, {g.letter}};
    for (std::size_t n = g.from; n != start; n = static_cast<std::size_t>(parent[n])) f.cycle.push_back(via[n]);
    std::reverse(f.cycle.begin(), f.cycle.end());
    return f;
  };
  ILevelResult r;
  if (best[0]) r.minus = rebuild(*best[0]);
  if (best[1]) r.zero = rebuild(*best[1]);
  if (best[2]) r.plus = rebuild(*best[2]);
  return r;
}

// Covering cycle from (anchor, 0) back to (anchor, 0) under the real zero/nonzero semantics.
std::optional<std::vector<LetterId>> search_zero(const Mbca& m, StateSet f, StateId anchor) {
  const Local loc = localize(m, f);
  const int L = loc.size();
  const Counter bound = std::min<Counter>(
      (static_cast<Counter>(L) * (Counter{1} << L) + 1) * (m.max_increment() + 1), 256);
  const std::size_t masks = std::size_t{1} << L;
  const std::size_t range = static_cast<std::size_t>(bound + 1);
  const StateSet full_local = static_cast<StateSet>(masks - 1);
  auto id = [&](int s, std::size_t mask, Counter c) {
    return (static_cast<std::size_t>(s) * masks + mask) * range + static_cast<std::size_t>(c);
  };
  std::vector<std::int64_t> parent(static_cast<std::size_t>(L) * masks * range, -2);
  std::vector<LetterId> via(parent.size(), 0);
  const int qa = loc.index[anchor];
  const std::size_t start = id(qa, std::size_t{1} << qa, 0);
  parent[start] = -1;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const Counter c = static_cast<Counter>(node % range);
    const std::size_t mask = (node / range) % masks;
    const int s = static_cast<int>(node / range / masks);
    for (LetterId a = 0; a < m.num_letters(); ++a) {
      auto n = step(m, {loc.states[s], c}, a);
      if (!n || loc.index[n->state] < 0 || n->counter > bound) continue;
      const int ns = loc.index[n->state];
      const std::size_t nmask = mask | (std::size_t{1} << ns);
      if (ns == qa && nmask == full_local && n->counter == 0) {
        std::vector<LetterId> cycle{a};
        for (std::size_t x = node; x != start; x = static_cast<std::size_t>(parent[x])) cycle.push_back(via[x]);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      const std::size_t next = id(ns, nmask, n->counter);
      if (parent[next] != -2) continue;
      parent[next] = static_cast<std::int64_t>(node);
      via[next] = a;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::vector<LetterId> repeat_concat(const std::vector<LetterId>& x, Counter nx, const std::vector<LetterId>& y,
                                    Counter ny) {
  std::vector<LetterId> out;
  for (Counter i = 0; i < nx; ++i) out.insert(out.end(), x.begin(), x.end());
  for (Counter i = 0; i < ny; ++i) out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::optional<Counter> threshold_of(const LoopFilter* filter, StateId q) {
  if (!filter) return Counter{0};
  return filter->thresholds.at(q);
}

}  // namespace

std::vector<StateSet> candidate_sets(const Mbca& m) {
  const auto succ = successors(m);
  const StateSet reachable = reach(m, {m.initial(), 0}).reachable_states();
  std::vector<StateSet> out;
  StateSet done = 0;
  for (StateId q = 0; q < m.num_states(); ++q) {
    if (!contains(reachable, q) || contains(done, q)) continue;
    StateSet scc = 0;
    const StateSet fwd = closure_within(succ, q, reachable);
    for (StateId p = 0; p < m.num_states(); ++p)
      if (contains(fwd, p) && contains(closure_within(succ, p, reachable), q)) scc |= singleton(p);
    done |= scc;
    if (popcount(scc) > 20) throw Error(ErrorKind::UnsupportedSpec, "strongly connected component too large");
    // Enumerate subsets of the component via the standard submask walk.
    for (StateSet sub = scc; sub; sub = (sub - 1) & scc)
      if (strongly_connected(succ, sub)) out.push_back(sub);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Counter entry_counter(const LoopDescriptor& d, const LoopFilter* filter) {
  const Counter n = threshold_of(filter, d.anchor).value_or(0);
  return std::max(d.min_anchor_counter, n);
}

std::vector<LoopDescriptor> loops(const Mbca& m, const LoopFilter* filter, bool anchored) {
  const ReachSet from_start = reach(m, {m.initial(), 0});
  std::vector<LoopDescriptor> out;
  for (StateSet f : candidate_sets(m)) {
    const bool positive = m.accepts_set(f);
    for (StateId q = 0; q < m.num_states(); ++q) {
      if (!contains(f, q)) continue;
      const auto n_q = threshold_of(filter, q);
      if (!n_q) continue;
      auto admit = [&](LoopDescriptor d) {
        if (d.level == Level::Z && *n_q != 0) return;
        if (!anchored) {
          out.push_back(std::move(d));
          return;
        }
        if (d.level == Level::Z) {
          if (*n_q != 0 || !from_start.contains(q, 0)) return;
        } else if (!from_start.least_at_least(q, std::max(d.min_anchor_counter, *n_q))) {
          return;
        }
        out.push_back(std::move(d));
      };
      auto make = [&](Level lv, LoopKind kind, Counter dip, std::vector<LetterId> cycle) {
        return LoopDescriptor{q, lv, f, kind, positive, dip, lv == Level::Z ? 0 : dip + 1, std::move(cycle)};
      };

      const ILevelResult r = search_nonzero(m, f, q);
      if (r.plus) admit(make(Level::I, LoopKind::Plus, r.plus->dip, r.plus->cycle));
      std::optional<Found> zero = r.zero;
      if (r.plus && r.minus) {
        // plus^b . minus^a returns to the anchor with net change zero.
        const Counter a = r.plus->offset, b = -r.minus->offset;
        const Counter dip = std::max<Counter>({r.plus->dip, r.minus->dip - b, 0});
        if (!zero || dip < zero->dip) zero = Found{0, dip, repeat_concat(r.plus->cycle, b, r.minus->cycle, a)};
      }
      if (zero) admit(make(Level::I, LoopKind::Equal, zero->dip, zero->cycle));
      if (auto z = search_zero(m, f, q)) admit(make(Level::Z, LoopKind::Equal, 0, *z));
    }
  }
  return out;
}

std::vector<EssentialSet> essential_sets(const std::vector<LoopDescriptor>& ds) {
  std::vector<EssentialSet> out;
  for (const auto& d : ds) out.push_back({d.essential_set, d.positive});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EssentialSet> essential_sets(const Mbca& m) { return essential_sets(loops(m)); }

UPWord witness_word(const Mbca& m, const LoopDescriptor& d, const LoopFilter* filter) {
  std::optional<std::vector<LetterId>> approach;
  if (d.level == Level::Z) {
    approach = find_path(m, {m.initial(), 0}, d.anchor, 0, Counter{0});
  } else {
    approach = find_path(m, {m.initial(), 0}, d.anchor, entry_counter(d, filter));
  }
  if (!approach)
    throw Error(ErrorKind::AnchorUnreachable, "anchor " + m.states()[d.anchor] + " is not reachable");
  return normalize(UPWord{*approach, d.cycle});
}

std::string describe(const Mbca& m, const LoopDescriptor& d) {
  std::string out = d.positive ? "L+(" : "L-(";
  out += m.states()[d.anchor];
  out += d.level == Level::Z ? ", Z0, " : ", I, ";
  out += m.format_set(d.essential_set);
  out += ", ";
  out += to_string(d.delta_kind);
  out += ")";
  return out;
}

}  // namespace mbca
