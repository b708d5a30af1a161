#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "mbca/arena.hpp"
#include "mbca/report.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(MBCA_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& file) { return std::string(MBCA_DATA) + "/" + file; }

}  // namespace

TEST_CASE("documented invocations") {
  auto r = cli("classify --machine " + data("A1.mbca"));
  CHECK(r.code == 0);
  CHECK(r.out == "D_1^2\n");
  r = cli("member --machine " + data("A1.mbca") + " --word \"a a a b b ; c\"");
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = cli("member --machine " + data("A1.mbca") + " --word \"a a b b b ; c\"");
  CHECK(r.out == "false\n");
  r = cli("compare --machine " + data("ALL.mbca") + " --other " + data("NONE.mbca"));
  CHECK(r.code == 0);
  CHECK(r.out == "dual\n");
  r = cli("compare --machine " + data("ALL.mbca") + " --other " + data("A1.mbca"));
  CHECK(r.out == "less\n");
}

TEST_CASE("exit codes") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("classify").code == 2);
  CHECK(cli("classify --machine /nonexistent.mbca").code == 2);
  CHECK(cli("classify --machine " + data("A1.mbca") + " --format yaml").code == 2);
  CHECK(cli("validate --machine " + data("A1.mbca")).code == 0);
  CHECK(cli("validate --machine " + data("broken.mbca")).code == 1);
  CHECK(cli("member --machine " + data("A1.mbca") + " --word \"a ; z\"").code == 1);
  CHECK(cli("canonical --class C_9^1").code == 1);
}

TEST_CASE("structured classify round-trips byte for byte") {
  for (const char* file : {"A1.mbca", "G_omega.mbca", "ALL.mbca"}) {
    const auto r = cli(std::string("classify --format structured --machine ") + data(file));
    REQUIRE(r.code == 0);
    CHECK(mbca::to_structured(mbca::report_from_json(nlohmann::json::parse(r.out))) == r.out);
  }
}

TEST_CASE("subcommands") {
  CHECK(cli("invariants --machine " + data("G_omega.mbca")).out == "m 1\nn w*1+1\ns -1\nclass D\n");
  CHECK(cli("chains --machine " + data("A1.mbca")).code == 0);
  CHECK(cli("superchains --machine " + data("G_omega.mbca")).out.find("link") != std::string::npos);
  CHECK(cli("loops --machine " + data("A1.mbca")).out.find("witness") != std::string::npos);
  CHECK(cli("simulate --machine " + data("A1.mbca") + " --word \"a ; b\"").out.find("outcome blocked") !=
        std::string::npos);

  const auto canon = cli("canonical --class \"E_2^1 C_1^1\"");
  REQUIRE(canon.code == 0);
  const std::string path = "canonical_e21c11.mbca";
  std::ofstream(path) << canon.out;
  CHECK(cli("classify --machine " + path).out == "E_2^1 C_1^1\n");

  const auto game = cli("game --machine " + data("A1.mbca") + " --other " + data("A1.mbca") + " --s2 copycat");
  CHECK(game.code == 0);
  CHECK(game.out.find("0 losses") != std::string::npos);
  const auto one = cli("game --machine " + data("ALL.mbca") + " --other " + data("NONE.mbca") + " --s2 " +
                       data("repeat-a.strat") + " --s1 " + data("first-a.strat"));
  CHECK(one.out.find("player1wins") != std::string::npos);
}

TEST_CASE("selftest") {
  const auto r = cli("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("pass") != std::string::npos);
}
