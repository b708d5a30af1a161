#include "support.hpp"

#include <deque>
#include <map>

namespace mbca::testing {

Mbca machine_a1() {
  return build(parse_mbca(R"(mbca A1
alphabet a b c
states q0 q1 q2
initial q0
accept { q2 }
trans q0 a Z q0 +1
trans q0 a I q0 +1
trans q0 b I q1 -1
trans q0 c Z q2 0
trans q0 c I q2 0
trans q1 b I q1 -1
trans q1 c Z q2 0
trans q1 c I q2 0
trans q2 c Z q2 0
trans q2 c I q2 0
)"));
}

namespace {

MbcaCandidate single(const std::string& name, bool accepting) {
  MbcaCandidate c;
  c.name = name;
  c.alphabet = {"a"};
  c.states = {"q"};
  c.initial = "q";
  if (accepting) c.accept = {{"q"}};
  c.both("q", "a", "q", 0);
  return c;
}

}  // namespace

Mbca machine_all() { return build(single("ALL", true)); }
Mbca machine_none() { return build(single("NONE", false)); }

Mbca machine_pump() {
  MbcaCandidate c;
  c.name = "PUMP";
  c.alphabet = {"a", "b"};
  c.states = {"q0", "q1"};
  c.initial = "q0";
  c.accept = {{"q1"}};
  c.both("q0", "a", "q0", 1);
  c.both("q0", "b", "q1", 0);
  c.nonzero("q1", "b", "q1", -1);
  return build(c);
}

Mbca machine_g_omega() {
  MbcaCandidate c;
  c.name = "G_omega";
  c.alphabet = {"a", "b", "c", "d"};
  c.states = {"p", "qp", "qn"};
  c.initial = "p";
  c.accept = {{"qp"}};
  c.both("p", "a", "p", 1);
  c.both("p", "b", "qp", 0);
  c.both("qp", "c", "qp", 0);
  c.nonzero("qp", "d", "qn", -1);
  c.both("qn", "c", "qn", 0);
  c.nonzero("qn", "d", "qp", -1);
  return build(c);
}

Mbca machine_threshold() {
  MbcaCandidate c;
  c.name = "THRESHOLD";
  c.alphabet = {"a", "x", "y", "e"};
  c.states = {"q0", "s1", "s2", "b", "P", "t1", "t2", "N"};
  c.initial = "q0";
  c.accept = {{"P"}};
  c.both("q0", "a", "s1", 1);
  c.both("s1", "a", "s2", 1);
  c.both("s2", "a", "b", 1);
  c.both("b", "x", "P", 0);
  c.both("P", "e", "P", 0);
  c.nonzero("b", "y", "t1", -1);
  c.nonzero("t1", "y", "t2", -1);
  c.nonzero("t2", "y", "N", -1);
  c.both("N", "e", "N", 0);
  return build(c);
}

Mbca random_machine(std::mt19937& rng, const RandomShape& shape) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_state(0, shape.states - 1);
  MbcaCandidate c;
  c.name = "random";
  for (int a = 0; a < shape.letters; ++a) c.alphabet.push_back(std::string(1, static_cast<char>('a' + a)));
  for (int q = 0; q < shape.states; ++q) c.states.push_back("s" + std::to_string(q));
  c.initial = "s0";
  for (int q = 0; q < shape.states; ++q) {
    for (int a = 0; a < shape.letters; ++a) {
      if (unit(rng) < shape.missing) continue;
      const std::string& from = c.states[q];
      const std::string& to = c.states[pick_state(rng)];
      if (shape.counter_free) {
        c.both(from, c.alphabet[a], to, 0);
      } else if (unit(rng) < shape.nonzero_only) {
        c.nonzero(from, c.alphabet[a], to, std::uniform_int_distribution<int>(-1, shape.max_delta)(rng));
      } else {
        c.both(from, c.alphabet[a], to, std::uniform_int_distribution<int>(0, shape.max_delta)(rng));
      }
    }
  }
  const std::uint64_t subsets = std::uint64_t{1} << shape.states;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    if (unit(rng) >= 0.3) continue;
    std::vector<std::string> members;
    for (int q = 0; q < shape.states; ++q)
      if ((s >> q) & 1U) members.push_back(c.states[q]);
    c.accept.push_back(members);
  }
  return build(c);
}

Mbca with_family(const Mbca& m, std::uint64_t family_bits) {
  MbcaCandidate c = to_candidate(m);
  c.accept.clear();
  const std::uint64_t subsets = std::uint64_t{1} << m.num_states();
  for (std::uint64_t s = 1; s < subsets; ++s) {
    if (!((family_bits >> s) & 1U)) continue;
    std::vector<std::string> members;
    for (StateId q = 0; q < m.num_states(); ++q)
      if (contains(s, q)) members.push_back(m.states()[q]);
    c.accept.push_back(members);
  }
  return build(c);
}

std::vector<Mbca> exhaustive_counter_free(int states, int letters) {
  const int cells = states * letters;
  int graphs = 1;
  for (int i = 0; i < cells; ++i) graphs *= states + 1;
  const std::uint64_t families = std::uint64_t{1} << ((1U << states) - 1);
  std::vector<Mbca> out;
  for (int g = 0; g < graphs; ++g) {
    MbcaCandidate c;
    c.name = "cf" + std::to_string(g);
    for (int a = 0; a < letters; ++a) c.alphabet.push_back(std::string(1, static_cast<char>('a' + a)));
    for (int q = 0; q < states; ++q) c.states.push_back("q" + std::to_string(q));
    c.initial = "q0";
    int code = g;
    for (int q = 0; q < states; ++q) {
      for (int a = 0; a < letters; ++a) {
        const int to = code % (states + 1);
        code /= states + 1;
        if (to < states) c.both(c.states[q], c.alphabet[a], c.states[to], 0);
      }
    }
    const Mbca base = build(c);
    for (std::uint64_t f = 0; f < families; ++f) out.push_back(with_family(base, f << 1));
  }
  return out;
}

Mbca duplicate_state(const Mbca& m, StateId victim, std::mt19937& rng) {
  const StateId twin = static_cast<StateId>(m.num_states());
  MbcaCandidate c;
  c.name = m.name() + "_dup";
  c.alphabet = m.alphabet();
  c.states = m.states();
  c.states.push_back(m.states()[victim] + "_twin");
  c.initial = m.states()[m.initial()];
  std::bernoulli_distribution coin(0.5);
  for (StateId q = 0; q <= twin; ++q) {
    const StateId src = q == twin ? victim : q;
    for (LetterId a = 0; a < m.num_letters(); ++a) {
      // One decision per (state, letter) keeps the zero and nonzero entries identical.
      const bool redirect = coin(rng);
      for (Level lv : {Level::Z, Level::I}) {
        const auto& t = m.entry(src, a, lv);
        if (!t) continue;
        const StateId target = (t->target == victim && redirect) ? twin : t->target;
        c.transitions.push_back({c.states[q], m.alphabet()[a], lv, c.states[target], t->delta});
      }
    }
  }
  const std::uint64_t subsets = std::uint64_t{1} << (m.num_states() + 1);
  for (std::uint64_t s = 1; s < subsets; ++s) {
    StateSet projected = s & ~singleton(twin);
    if (contains(s, twin)) projected |= singleton(victim);
    if (!m.accepts_set(projected)) continue;
    std::vector<std::string> members;
    for (StateId q = 0; q <= twin; ++q)
      if (contains(s, q)) members.push_back(c.states[q]);
    c.accept.push_back(members);
  }
  return build(c);
}

std::vector<std::vector<bool>> bfs_reach(const Mbca& m, Configuration from, Counter cap) {
  std::vector<std::vector<bool>> seen(m.num_states(), std::vector<bool>(static_cast<std::size_t>(cap + 1), false));
  std::deque<Configuration> queue{from};
  seen[from.state][static_cast<std::size_t>(from.counter)] = true;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (LetterId a = 0; a < m.num_letters(); ++a) {
      auto n = step(m, c, a);
      if (!n || n->counter > cap || seen[n->state][static_cast<std::size_t>(n->counter)]) continue;
      seen[n->state][static_cast<std::size_t>(n->counter)] = true;
      queue.push_back(*n);
    }
  }
  return seen;
}

std::vector<StateSet> brute_inf_sets(const Mbca& m, std::size_t max_u, std::size_t max_v) {
  std::map<Configuration, std::vector<LetterId>> prefix_for;
  std::vector<std::pair<Configuration, std::vector<LetterId>>> layer{{{m.initial(), 0}, {}}};
  prefix_for[{m.initial(), 0}] = {};
  for (std::size_t len = 0; len < max_u; ++len) {
    std::vector<std::pair<Configuration, std::vector<LetterId>>> next;
    for (const auto& [c, u] : layer)
      for (LetterId a = 0; a < m.num_letters(); ++a)
        if (auto n = step(m, c, a); n && !prefix_for.count(*n)) {
          auto w = u;
          w.push_back(a);
          prefix_for[*n] = w;
          next.emplace_back(*n, w);
        }
    layer = std::move(next);
  }
  std::set<StateSet> out;
  for (const auto& [c, u] : prefix_for) {
    for_each_upword(m.num_letters(), 0, max_v, [&](const UPWord& w) {
      auto t = run(m, UPWord{u, w.period});
      if (t.outcome != RunOutcome::Blocked) out.insert(t.inf_set);
    });
  }
  return {out.begin(), out.end()};
}

}  // namespace mbca::testing
