#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mbca/arena.hpp"
#include "mbca/gallery.hpp"
#include "mbca/report.hpp"
#include "support.hpp"
#include "wagner_oracle.hpp"

using namespace mbca;
using nlohmann::json;

namespace {

// Usage problems that CLI11 cannot see, such as a missing flag for one subcommand.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string machine, other, word, spec, s1, s2;
  std::size_t horizon = kDefaultHorizon;
  bool structured() const { return format == "structured"; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

Mbca load(const std::string& path, const char* flag) { return build(parse_mbca(slurp(need(path, flag)))); }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const Options& o) {
  const ValidationResult v = validate(parse_mbca(slurp(need(o.machine, "--machine"))));
  if (o.structured()) {
    json violations = json::array();
    for (const auto& x : v.report.violations) {
      violations.push_back({{"rule", std::string(to_string(x.rule))},
                            {"state", x.state},
                            {"letter", x.letter},
                            {"level", x.level ? std::string(to_string(*x.level)) : ""},
                            {"detail", x.detail}});
    }
    print({{"valid", v.report.ok()}, {"violations", violations}});
  } else if (v.report.ok()) {
    std::cout << "valid\n";
  } else {
    std::cout << v.report.describe();
  }
  return v.report.ok() ? 0 : 1;
}

int cmd_simulate(const Options& o) {
  const Mbca m = load(o.machine, "--machine");
  const UPWord w = parse_upword(m, need(o.word, "--word"));
  const RunTrace t = run(m, w);
  static const char* outcomes[] = {"blocked", "periodic", "ramp"};
  const std::string outcome = outcomes[static_cast<int>(t.outcome)];
  const bool accepted = t.outcome != RunOutcome::Blocked && m.accepts_set(t.inf_set);
  json j{{"outcome", outcome}, {"accepted", accepted}};
  if (t.outcome == RunOutcome::Blocked) {
    j["blocked_at"] = t.blocked_at;
  } else {
    j["inf_set"] = m.format_set(t.inf_set);
    j["cycle_start"] = t.cycle_start;
    j["cycle_len"] = t.cycle_len;
    j["shift"] = t.shift;
  }
  json configs = json::array();
  for (const auto& c : t.configs) configs.push_back(m.states()[c.state] + ":" + std::to_string(c.counter));
  j["configs"] = configs;
  if (o.structured()) {
    print(j);
    return 0;
  }
  std::cout << "outcome " << outcome << "\n";
  if (t.outcome == RunOutcome::Blocked) {
    std::cout << "blocked at letter " << t.blocked_at << "\n";
  } else {
    std::cout << "inf " << m.format_set(t.inf_set) << "\ncycle from " << t.cycle_start << " length " << t.cycle_len
              << " shift " << t.shift << "\n";
  }
  std::cout << "configs";
  for (const auto& c : configs) std::cout << " " << c.get<std::string>();
  std::cout << "\naccepted " << (accepted ? "true" : "false") << "\n";
  return 0;
}

int cmd_member(const Options& o) {
  const Mbca m = load(o.machine, "--machine");
  const bool in = member(m, parse_upword(m, need(o.word, "--word")));
  if (o.structured())
    print({{"member", in}});
  else
    std::cout << (in ? "true" : "false") << "\n";
  return 0;
}

int cmd_report(const Options& o, const std::string& which) {
  const Mbca m = load(o.machine, "--machine");
  ReportSections sec{which == "loops", which == "chains", which == "superchains", which == "classify"};
  const Report r = analyze(m, sec);
  if (o.structured()) {
    std::cout << to_structured(r);
    return 0;
  }
  if (which == "classify") {
    std::cout << r.name << "\n";
    return 0;
  }
  std::ostringstream out;
  if (which == "loops") {
    for (const auto& l : r.loops) {
      out << "L" << l.sign << "(" << l.anchor << ", " << l.level << ", " << l.set << ", " << l.kind << ") dip " << l.dip
          << " from " << l.min_anchor_counter;
      if (!l.witness.empty()) out << " witness " << l.witness;
      out << "\n";
    }
    out << "essential sets:";
    for (const auto& e : r.essential_sets) out << " " << e.sign << e.set;
    out << "\n";
  } else if (which == "chains") {
    for (const auto& c : r.chains) {
      out << c.sign << " length " << c.length << ":";
      for (const auto& s : c.sets) out << " " << s;
      out << "\n";
    }
  } else if (which == "superchains") {
    for (const auto& s : r.superchains) {
      out << s.sign << " length " << s.length << "\n";
      for (const auto& c : s.finite_part) {
        out << "  chain";
        for (const auto& set : c.sets) out << " " << set;
        out << "\n";
      }
      for (const auto& w : s.omega_part) out << "  link " << w << "\n";
    }
  } else {
    out << "m " << r.invariants.m << "\nn " << r.invariants.n << "\ns " << r.invariants.s << "\nclass "
        << r.invariants.coarse_class << "\n";
  }
  std::cout << out.str();
  return 0;
}

int cmd_compare(const Options& o) {
  const WadgeName a = name(load(o.machine, "--machine"));
  const WadgeName b = name(load(o.other, "--other"));
  const std::string verdict(to_string(compare(a, b)));
  if (o.structured())
    print({{"name", render(a)}, {"other_name", render(b)}, {"verdict", verdict}});
  else
    std::cout << verdict << "\n";
  return 0;
}

int cmd_canonical(const Options& o) {
  const ClassSpec spec = parse_class_spec(need(o.spec, "--class"));
  const std::string text = format_mbca(canonical(spec));
  if (o.structured())
    print({{"class", render(induced_name(spec))}, {"machine", text}});
  else
    std::cout << text;
  return 0;
}

Strategy load_strategy(const std::string& path, const Mbca& a) {
  if (path == "copycat") return copycat(a);
  return parse_strategy(slurp(path));
}

json play_json(const Mbca& a, const Mbca& b, const PlayRecord& r) {
  return {{"a_word", format_upword(a, r.a_word)},
          {"b_word", r.b_infinite ? format_upword(b, r.b_word) : ""},
          {"b_infinite", r.b_infinite},
          {"a_member", r.a_member},
          {"b_member", r.b_member},
          {"turns", r.turns},
          {"verdict", std::string(to_string(r.verdict))}};
}

int cmd_game(const Options& o) {
  const Mbca a = load(o.machine, "--machine");
  const Mbca b = load(o.other, "--other");
  const Strategy s2 = load_strategy(need(o.s2, "--s2"), a);
  if (!o.s1.empty()) {
    const PlayRecord r = play(a, b, load_strategy(o.s1, a), s2, o.horizon);
    const json j = play_json(a, b, r);
    if (o.structured()) {
      print(j);
    } else {
      std::cout << "a " << j["a_word"].get<std::string>() << "\nb "
                << (r.b_infinite ? j["b_word"].get<std::string>() : "finite") << "\n"
                << to_string(r.verdict) << "\n";
    }
    return 0;
  }
  const auto report = validate_strategy(a, b, s2, player1_suite(a, b), o.horizon);
  if (o.structured()) {
    json losses = json::array();
    for (const auto& [who, r] : report.losses) losses.push_back({{"player1", who}, {"play", play_json(a, b, r)}});
    json errors = json::array();
    for (const auto& [who, e] : report.errors) errors.push_back({{"player1", who}, {"error", e}});
    print({{"plays", report.plays}, {"losses", losses}, {"errors", errors}, {"summary", report.summary()}});
  } else {
    std::cout << report.summary() << "\n";
    std::size_t shown = 0;
    for (const auto& [who, r] : report.losses) {
      if (shown++ == 5) break;
      std::cout << "lost to " << who << ": a " << format_upword(a, r.a_word) << ", b "
                << (r.b_infinite ? format_upword(b, r.b_word) : "finite") << "\n";
    }
    for (const auto& [who, e] : report.errors) std::cout << "error against " << who << ": " << e << "\n";
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  std::size_t wagner_ok = 0, wagner_all = 0;
  auto check = [&](const Mbca& m) {
    const auto want = testing::wagner_invariants(m);
    const auto got = Analysis(m).invariants();
    ++wagner_all;
    if (got.m == want.m && got.n == want.n && got.s == want.s) ++wagner_ok;
  };
  for (const auto& m : testing::exhaustive_counter_free(2, 2)) check(m);
  std::mt19937 rng(7);
  testing::RandomShape shape;
  shape.counter_free = true;
  for (int i = 0; i < 200; ++i) check(testing::random_machine(rng, shape));

  std::size_t gallery_ok = 0, gallery_all = 0;
  const std::vector<OrdinalW2> alphas{{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {2, 0}};
  for (const auto& spec : gallery_box("CDE", 2, alphas)) {
    ++gallery_all;
    if (render(name(canonical(spec))) == render(induced_name(spec))) ++gallery_ok;
  }
  const bool pass = wagner_ok == wagner_all && gallery_ok == gallery_all;
  if (o.structured()) {
    print({{"wagner", {{"passed", wagner_ok}, {"total", wagner_all}}},
           {"gallery", {{"passed", gallery_ok}, {"total", gallery_all}}},
           {"pass", pass}});
  } else {
    std::cout << "wagner cross-check: " << wagner_ok << "/" << wagner_all << " agree\n"
              << "gallery round-trip: " << gallery_ok << "/" << gallery_all << " match\n"
              << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyzer for Muller blind one-counter automata"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--machine", o.machine, "machine file");
  app.add_option("--other", o.other, "second machine file");
  app.add_option("--word", o.word, "ultimately periodic word \"u ; v\"");
  app.add_option("--class", o.spec, "class spec such as E_2^1 C_1^w*1");
  app.add_option("--horizon", o.horizon, "turn limit for games");
  app.add_option("--s1", o.s1, "player-1 strategy file; omit to play the default suite");
  app.add_option("--s2", o.s2, "player-2 strategy file, or copycat");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check a machine file against the table rules"},
      {"simulate", "run a machine on a word"},
      {"member", "decide membership of a word"},
      {"loops", "list loop descriptors and essential sets"},
      {"chains", "list maximal alternating chains"},
      {"superchains", "list maximal superchains"},
      {"invariants", "print m, n and s"},
      {"classify", "print the name of the machine's language"},
      {"compare", "compare two machines by name"},
      {"canonical", "emit the canonical machine of a class"},
      {"game", "play a game, or validate a player-2 strategy against the default suite"},
      {"selftest", "counter-free cross-check and gallery round-trip"},
  };
  for (const auto& [cmd, help] : commands) app.add_subcommand(cmd, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "validate") return cmd_validate(o);
    if (cmd == "simulate") return cmd_simulate(o);
    if (cmd == "member") return cmd_member(o);
    if (cmd == "compare") return cmd_compare(o);
    if (cmd == "canonical") return cmd_canonical(o);
    if (cmd == "game") return cmd_game(o);
    if (cmd == "selftest") return cmd_selftest(o);
    return cmd_report(o, cmd);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
