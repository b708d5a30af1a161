#include <doctest.h>

#include <algorithm>

#include "mbca/loops.hpp"
#include "support.hpp"

using namespace mbca;

namespace {

bool has_loop(const std::vector<LoopDescriptor>& ds, StateId q, Level lv, StateSet f, LoopKind k) {
  return std::any_of(ds.begin(), ds.end(), [&](const LoopDescriptor& d) {
    return d.anchor == q && d.level == lv && d.essential_set == f && d.delta_kind == k;
  });
}

}  // namespace

TEST_CASE("A1 loops and essential sets") {
  const Mbca m = testing::machine_a1();
  const auto ds = loops(m);
  CHECK(has_loop(ds, 0, Level::I, singleton(0), LoopKind::Plus));
  CHECK(has_loop(ds, 2, Level::I, singleton(2), LoopKind::Equal));
  CHECK(has_loop(ds, 2, Level::Z, singleton(2), LoopKind::Equal));
  const auto es = essential_sets(ds);
  REQUIRE(es.size() == 2);
  CHECK(es[0] == EssentialSet{singleton(0), false});
  CHECK(es[1] == EssentialSet{singleton(2), true});
  for (const auto& d : ds) {
    const UPWord w = witness_word(m, d);
    if (d.anchor == 2) CHECK(format_upword(m, w) == (d.level == Level::I ? "a ; c" : "; c"));
    if (d.anchor == 0) CHECK(format_upword(m, w) == "; a");
  }
}

TEST_CASE("small named machines") {
  const Mbca all = testing::machine_all();
  CHECK(essential_sets(all) == std::vector<EssentialSet>{{singleton(0), true}});
  const auto ad = loops(all);
  REQUIRE_FALSE(ad.empty());
  CHECK(member(all, witness_word(all, ad.front())));

  const Mbca pump = testing::machine_pump();
  CHECK(essential_sets(pump) == std::vector<EssentialSet>{{singleton(0), false}});

  MbcaCandidate c;
  c.alphabet = {"a", "b"};
  c.states = {"q"};
  c.initial = "q";
  c.both("q", "a", "q", 1);
  c.nonzero("q", "b", "q", -1);
  const auto ds = loops(build(c));
  CHECK(has_loop(ds, 0, Level::I, singleton(0), LoopKind::Plus));
  CHECK(has_loop(ds, 0, Level::I, singleton(0), LoopKind::Equal));
}

TEST_CASE("descriptor invariants and round trips on random machines") {
  std::mt19937 rng(5);
  for (int i = 0; i < 150; ++i) {
    testing::RandomShape shape;
    shape.states = 1 + i % 4;
    shape.letters = 1 + i % 3;
    const Mbca m = testing::random_machine(rng, shape);
    const auto ds = loops(m);
    for (const auto& d : ds) {
      CHECK(contains(d.essential_set, d.anchor));
      CHECK(d.positive == m.accepts_set(d.essential_set));
      if (d.level == Level::Z) {
        CHECK(d.min_anchor_counter == 0);
        CHECK(d.delta_kind == LoopKind::Equal);
      } else {
        CHECK(d.min_anchor_counter == d.dip + 1);
      }
      const auto t = run(m, witness_word(m, d));
      REQUIRE(t.outcome != RunOutcome::Blocked);
      CHECK(t.inf_set == d.essential_set);
    }
    const auto es = essential_sets(ds);
    for (StateSet inf : testing::brute_inf_sets(m, 4, 4)) {
      CHECK(std::any_of(es.begin(), es.end(), [&](const EssentialSet& e) { return e.set == inf; }));
    }
  }
}
