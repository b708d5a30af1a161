#include <doctest.h>

#include "mbca/run.hpp"
#include "support.hpp"

using namespace mbca;

TEST_CASE("A1 membership follows p <= n") {
  const Mbca m = testing::machine_a1();
  CHECK(member(m, parse_upword(m, "a a a b b ; c")));
  CHECK(member(m, parse_upword(m, "; c")));
  CHECK_FALSE(member(m, parse_upword(m, "a a b b b ; c")));
  CHECK_FALSE(member(m, parse_upword(m, "; a")));
  const auto t = run(m, parse_upword(m, "a a b b b ; c"));
  CHECK(t.outcome == RunOutcome::Blocked);
  CHECK(t.blocked_at == 4);
  const auto ok = run(m, parse_upword(m, "a a a b b ; c"));
  CHECK(ok.outcome != RunOutcome::Blocked);
  CHECK(ok.inf_set == singleton(*m.find_state("q2")));
}

TEST_CASE("empty family rejects and fixed points are periodic") {
  const Mbca none = testing::machine_none();
  const auto t = run(none, parse_upword(none, "; a"));
  CHECK(t.outcome == RunOutcome::Periodic);
  CHECK(t.inf_set == singleton(0));
  CHECK_FALSE(member(none, parse_upword(none, "a ; a")));
}

TEST_CASE("loop witnesses match the three loop cases") {
  const Mbca pump = testing::machine_pump();
  auto w = extract_loop_witness(run(pump, parse_upword(pump, "; a")));
  CHECK(w.kind == LoopKind::Plus);
  CHECK(w.level == Level::I);
  CHECK(w.visited == singleton(0));

  const Mbca all = testing::machine_all();
  w = extract_loop_witness(run(all, parse_upword(all, "; a")));
  CHECK(w.kind == LoopKind::Equal);
  CHECK(w.level == Level::Z);

  const Mbca a1 = testing::machine_a1();
  w = extract_loop_witness(run(a1, parse_upword(a1, "a a a b b ; c")));
  CHECK(w.kind == LoopKind::Equal);
  CHECK(w.anchor_state == *a1.find_state("q2"));
  CHECK(w.visited == singleton(*a1.find_state("q2")));
}

TEST_CASE("word syntax and normalization") {
  const Mbca m = testing::machine_a1();
  CHECK_THROWS_AS(parse_upword(m, "a b"), Error);
  CHECK_THROWS_AS(parse_upword(m, "a ;"), Error);
  CHECK_THROWS_AS(parse_upword(m, "z ; a"), Error);
  const UPWord w = parse_upword(m, "a c ; c c");
  CHECK(format_upword(m, normalize(w)) == "a ; c");
  CHECK(format_upword(m, normalize(parse_upword(m, "a ; a"))) == "; a");
}

TEST_CASE("random runs: shift monotonicity, prefix stability, witness invariants") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 5);
  for (int i = 0; i < 300; ++i) {
    const Mbca m = testing::random_machine(rng, {});
    std::uniform_int_distribution<LetterId> letter(0, static_cast<LetterId>(m.num_letters() - 1));
    UPWord w;
    for (int k = len(rng); k > 0; --k) w.prefix.push_back(letter(rng));
    for (int k = len(rng) + 1; k > 0; --k) w.period.push_back(letter(rng));

    // Shift monotonicity of finite reads.
    std::uniform_int_distribution<StateId> state(0, static_cast<StateId>(m.num_states() - 1));
    Configuration lo{state(rng), std::uniform_int_distribution<Counter>(0, 4)(rng)};
    Configuration hi{lo.state, lo.counter + 3};
    for (LetterId a : w.period) {
      auto nlo = step(m, lo, a);
      if (!nlo) break;
      auto nhi = step(m, hi, a);
      REQUIRE(nhi);
      CHECK(nhi->state == nlo->state);
      CHECK(nhi->counter == nlo->counter + 3);
      lo = *nlo;
      hi = *nhi;
    }

    UPWord longer = w;
    longer.prefix.insert(longer.prefix.end(), w.period.begin(), w.period.end());
    CHECK(member(m, w) == member(m, longer));

    const auto t = run(m, w);
    if (t.outcome == RunOutcome::Blocked) continue;
    const auto lw = extract_loop_witness(t);
    CHECK(lw.visited == t.inf_set);
    const Configuration a = t.at(lw.anchor_index), b = t.at(lw.close_index);
    CHECK(a.state == b.state);
    StateSet seen = 0;
    for (std::size_t j = lw.anchor_index; j < lw.close_index; ++j) {
      CHECK(t.at(j).counter >= a.counter);
      seen |= singleton(t.at(j).state);
    }
    CHECK(seen == lw.visited);
    CHECK((lw.kind == LoopKind::Plus) == (b.counter > a.counter));
    if (lw.level == Level::Z) CHECK(a.counter == 0);
  }
}
