#include "wagner_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mbca::testing {

namespace {

using Graph = std::vector<std::vector<bool>>;

Graph edges_of(const Mbca& m) {
  Graph g(m.num_states(), std::vector<bool>(m.num_states(), false));
  for (StateId q = 0; q < m.num_states(); ++q)
    for (LetterId a = 0; a < m.num_letters(); ++a)
      if (const auto& t = m.entry(q, a, Level::Z)) g[q][t->target] = true;
  return g;
}

// reach[x][y]: y reachable from x by a path of length >= 0 using only states in `inside`.
Graph closure(const Graph& g, StateSet inside) {
  const std::size_t n = g.size();
  Graph r(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    if (!contains(inside, static_cast<StateId>(x))) continue;
    r[x][x] = true;
    for (std::size_t y = 0; y < n; ++y)
      if (g[x][y] && contains(inside, static_cast<StateId>(y))) r[x][y] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

bool cyclic_component(const Graph& g, StateSet s) {
  std::vector<StateId> members;
  for (StateId q = 0; q < g.size(); ++q)
    if (contains(s, q)) members.push_back(q);
  if (members.size() == 1) return g[members[0]][members[0]];
  const Graph r = closure(g, s);
  for (StateId x : members)
    for (StateId y : members)
      if (!r[x][y]) return false;
  return true;
}

}  // namespace

InvariantTriple wagner_invariants(const Mbca& m) {
  const Graph g = edges_of(m);
  const std::size_t n = m.num_states();
  const StateSet everything = (StateSet{1} << n) - 1;
  const Graph r = closure(g, everything);

  std::vector<StateSet> essential;
  for (StateSet s = 1; s <= everything; ++s) {
    const auto first = static_cast<StateId>(std::countr_zero(s));
    if (r[m.initial()][first] && cyclic_component(g, s)) essential.push_back(s);
  }
  std::sort(essential.begin(), essential.end(), [](StateSet a, StateSet b) { return popcount(a) < popcount(b); });
  std::map<StateSet, int> len;
  int top = 0;
  for (StateSet f : essential) {
    int best = 1;
    for (StateSet h : essential)
      if (h != f && is_subset(h, f) && m.accepts_set(h) != m.accepts_set(f)) best = std::max(best, len[h] + 1);
    len[f] = best;
    top = std::max(top, best);
  }
  InvariantTriple t;
  t.m = top;
  if (top == 0) return t;

  std::vector<StateSet> maximal;
  for (StateSet f : essential)
    if (len[f] == top) maximal.push_back(f);
  auto sign = [&](StateSet f) { return (top % 2 == 1) == m.accepts_set(f); };
  auto reaches = [&](StateSet from, StateSet to) {
    for (StateId x = 0; x < n; ++x)
      for (StateId y = 0; y < n; ++y)
        if (contains(from, x) && contains(to, y) && r[x][y]) return true;
    return false;
  };
  std::vector<int> memo(maximal.size(), 0);
  std::function<int(std::size_t)> longest = [&](std::size_t i) {
    if (memo[i]) return memo[i];
    int best = 1;
    for (std::size_t j = 0; j < maximal.size(); ++j)
      if (sign(maximal[j]) != sign(maximal[i]) && reaches(maximal[i], maximal[j]))
        best = std::max(best, longest(j) + 1);
    return memo[i] = best;
  };
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    int& slot = sign(maximal[i]) ? pos : neg;
    slot = std::max(slot, longest(i));
  }
  t.n = OrdinalW2{0, std::max(pos, neg)};
  t.s = pos == neg ? 0 : pos > neg ? 1 : -1;
  t.coarse_class = t.s > 0 ? 'C' : t.s < 0 ? 'D' : 'E';
  return t;
}

}  // namespace mbca::testing
