#include <doctest.h>

#include "mbca/arena.hpp"
#include "mbca/gallery.hpp"
#include "support.hpp"

using namespace mbca;

namespace {

Strategy constant(Role role, const Mbca& opponent, const std::string& emit) {
  std::vector<std::string> inputs = opponent.alphabet();
  if (role == Role::Player1) inputs.insert(inputs.end(), {"start", "skip"});
  Strategy s;
  s.name = "const-" + emit;
  s.role = role;
  for (const auto& x : inputs) s.add("s", x, emit, "s");
  return s;
}

}  // namespace

TEST_CASE("strategy tables round-trip through text") {
  const std::string text =
      "strategy walker role 2\n"
      "state s0 on a -> emit b goto s1 counter +2\n"
      "state s1 on a -> emit skip goto s0 counter -1\n";
  const Strategy s = parse_strategy(text);
  CHECK(s.role == Role::Player2);
  CHECK(s.initial == "s0");
  CHECK(format_strategy(s) == text);
  CHECK_THROWS_AS(parse_strategy("state s0 on a -> emit b goto s1\n"), Error);
  CHECK_THROWS_AS(parse_strategy("strategy x role 3\n"), Error);
  CHECK_THROWS_AS(parse_strategy("strategy x role 1\nstate s on a -> emit b goto s counter z\n"), Error);
}

TEST_CASE("trivial plays") {
  const Mbca all = testing::machine_all();
  const Mbca none = testing::machine_none();
  const auto p1 = constant(Role::Player1, all, "a");
  const auto rec = play(all, all, p1, copycat(all));
  CHECK(rec.verdict == Winner::Player2);
  CHECK(rec.a_word == rec.b_word);

  const auto any2 = constant(Role::Player2, all, "a");
  CHECK(play(all, none, p1, any2).verdict == Winner::Player1);

  // Skipping forever leaves b finite.
  const auto lazy = constant(Role::Player2, all, "skip");
  const auto idle = play(all, all, p1, lazy);
  CHECK_FALSE(idle.b_infinite);
  CHECK(idle.verdict == Winner::Player1);
}

TEST_CASE("counter strategies ramp to closure") {
  const Mbca all = testing::machine_all();
  const auto p1 = constant(Role::Player1, all, "a");
  Strategy grow;
  grow.name = "grow";
  grow.role = Role::Player2;
  for (const auto& x : all.alphabet()) grow.add("g", x, "a", "g", 1);
  CHECK(play(all, all, p1, grow).verdict == Winner::Player2);

  Strategy shrink = grow;
  for (auto& [key, rule] : shrink.rules) rule.counter = -1;
  CHECK_THROWS_AS(play(all, all, p1, shrink), Error);
}

TEST_CASE("copycat never loses on identical machines") {
  std::mt19937 rng(5);
  for (int i = 0; i < 15; ++i) {
    const Mbca m = testing::random_machine(rng, {});
    const auto report = validate_strategy(m, m, copycat(m), player1_suite(m, m, static_cast<std::uint32_t>(i), 256, 16));
    CHECK(report.clean());
  }
}

TEST_CASE("gallery witnesses win, and the reverse direction loses") {
  for (const auto& w : gallery_witnesses()) {
    CAPTURE(w.lesser);
    const Mbca a = canonical(parse_class_spec(w.lesser));
    const Mbca b = canonical(parse_class_spec(w.greater));
    CHECK(compare(name(a), name(b)) == Verdict::Less);
    const auto report = validate_strategy(a, b, w.strategy, player1_suite(a, b));
    CHECK_MESSAGE(report.clean(), report.summary());
  }
  const Mbca d12 = canonical(parse_class_spec("D_1^2"));
  const Mbca c11 = canonical(parse_class_spec("C_1^1"));
  const auto p2 = player1_suite(c11, d12, 3, 64, 0);  // reuse the one-state tables as player-2 candidates
  for (const auto& cand : p2) {
    Strategy s2;
    s2.name = cand.name;
    s2.role = Role::Player2;
    for (const auto& x : d12.alphabet()) s2.add("s", x, cand.rules.at({"s", "start"}).emit, "s");
    CHECK_FALSE(validate_strategy(d12, c11, s2, player1_suite(d12, c11)).clean());
  }
}
