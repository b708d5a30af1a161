#include <doctest.h>

#include "mbca/gallery.hpp"
#include "mbca/report.hpp"
#include "support.hpp"

using namespace mbca;

TEST_CASE("A1 report") {
  const Report r = analyze(testing::machine_a1());
  CHECK(r.machine.states == 3);
  CHECK(r.invariants.m == 1);
  CHECK(r.invariants.n == "2");
  CHECK(r.invariants.s == -1);
  CHECK(r.invariants.coarse_class == "D");
  CHECK(r.name == "D_1^2");
  CHECK_FALSE(r.loops.empty());
  for (const auto& l : r.loops) CHECK_FALSE(l.witness.empty());
  CHECK(to_text(r).find("name: D_1^2") != std::string::npos);
}

TEST_CASE("reports survive the structured form") {
  std::vector<Mbca> machines{testing::machine_a1(), testing::machine_all(), testing::machine_g_omega(),
                             testing::machine_threshold(), canonical(parse_class_spec("E_2^1 C_1^w*1"))};
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) machines.push_back(testing::random_machine(rng, {}));
  for (const auto& m : machines) {
    Report r = analyze(m);
    r.other_name = "C_1^1";
    r.verdict = "less";
    const std::string text = to_structured(r);
    const Report back = report_from_json(nlohmann::json::parse(text));
    CHECK(back == r);
    CHECK(to_structured(back) == text);
  }
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"machine": {}})")), Error);
}
