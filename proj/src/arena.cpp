#include "mbca/arena.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace mbca {

void Strategy::add(const std::string& state, const std::string& on, const std::string& emit, const std::string& next,
                   int counter) {
  if (initial.empty()) initial = state;
  if (!rules.emplace(std::make_pair(state, on), Rule{emit, next, counter}).second)
    throw Error(ErrorKind::Parse, "duplicate rule for state " + state + " on " + on);
}

std::vector<std::string> Strategy::state_names() const {
  std::set<std::string> seen;
  for (const auto& [key, rule] : rules) {
    seen.insert(key.first);
    seen.insert(rule.next);
  }
  std::vector<std::string> out;
  if (!initial.empty()) out.push_back(initial);
  for (const auto& s : seen)
    if (s != initial) out.push_back(s);
  return out;
}

Strategy parse_strategy(std::string_view text) {
  Strategy s;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::Parse, "strategy line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] == "strategy") {
      if (header) fail("second header");
      if (tok.size() != 4 || tok[2] != "role" || (tok[3] != "1" && tok[3] != "2"))
        fail("expected `strategy <name> role <1|2>`");
      s.name = tok[1];
      s.role = tok[3] == "1" ? Role::Player1 : Role::Player2;
      header = true;
      continue;
    }
    if (!header) fail("missing `strategy` header");
    const bool shape = tok[0] == "state" && (tok.size() == 9 || tok.size() == 11) && tok[2] == "on" &&
                       tok[4] == "->" && tok[5] == "emit" && tok[7] == "goto";
    if (!shape) fail("expected `state <id> on <x> -> emit <y> goto <id> [counter <+-n>]`");
    int counter = 0;
    if (tok.size() == 11) {
      if (tok[9] != "counter") fail("expected `counter`");
      try {
        std::size_t used = 0;
        counter = std::stoi(tok[10], &used);
        if (used != tok[10].size()) fail("bad counter update");
      } catch (const std::logic_error&) {
        fail("bad counter update");
      }
    }
    s.add(tok[1], tok[3], tok[6], tok[8], counter);
  }
  if (!header) throw Error(ErrorKind::Parse, "empty strategy");
  return s;
}

std::string format_strategy(const Strategy& s) {
  std::ostringstream out;
  out << "strategy " << s.name << " role " << static_cast<int>(s.role) << "\n";
  for (const auto& state : s.state_names()) {
    for (auto it = s.rules.lower_bound({state, ""}); it != s.rules.end() && it->first.first == state; ++it) {
      out << "state " << state << " on " << it->first.second << " -> emit " << it->second.emit << " goto "
          << it->second.next;
      if (it->second.counter != 0) out << " counter " << (it->second.counter > 0 ? "+" : "") << it->second.counter;
      out << "\n";
    }
  }
  return out.str();
}

Strategy copycat(const Mbca& a) {
  Strategy s;
  s.name = "copycat";
  s.role = Role::Player2;
  for (const auto& x : a.alphabet()) s.add("c", x, x, "c");
  return s;
}

Strategy tabulate(const std::string& name, Role role, const std::vector<std::string>& inputs,
                  const std::string& initial,
                  const std::function<std::pair<std::string, std::string>(const std::string&, const std::string&)>& policy) {
  Strategy s;
  s.name = name;
  s.role = role;
  std::set<std::string> seen{initial};
  std::deque<std::string> todo{initial};
  s.initial = initial;
  while (!todo.empty()) {
    const std::string key = todo.front();
    todo.pop_front();
    for (const auto& x : inputs) {
      auto [emit, next] = policy(key, x);
      s.add(key, x, emit, next);
      if (seen.insert(next).second) {
        if (seen.size() > 10000) throw Error(ErrorKind::CapExceeded, "tabulated strategy exceeds 10000 states");
        todo.push_back(next);
      }
    }
  }
  return s;
}

std::vector<Strategy> player1_suite(const Mbca& a, const Mbca& b, std::uint32_t seed, std::size_t exhaustive_limit,
                                    std::size_t random_tables) {
  std::vector<std::string> inputs{std::string(kStart), std::string(kSkip)};
  for (const auto& x : b.alphabet()) inputs.push_back(x);
  const auto& out = a.alphabet();
  std::vector<Strategy> suite;
  if (out.empty()) return suite;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);

  const double total = std::pow(static_cast<double>(out.size()), static_cast<double>(inputs.size()));
  if (total <= static_cast<double>(exhaustive_limit)) {
    const auto count = static_cast<std::size_t>(total);
    for (std::size_t k = 0; k < count; ++k) {
      Strategy s;
      s.name = "p1-const-" + std::to_string(k);
      s.role = Role::Player1;
      std::size_t digits = k;
      for (const auto& x : inputs) {
        s.add("s", x, out[digits % out.size()], "s");
        digits /= out.size();
      }
      suite.push_back(std::move(s));
    }
  } else {
    for (std::size_t k = 0; k < exhaustive_limit; ++k) {
      Strategy s;
      s.name = "p1-sample-" + std::to_string(k);
      s.role = Role::Player1;
      for (const auto& x : inputs) s.add("s", x, out[pick(rng)], "s");
      suite.push_back(std::move(s));
    }
  }
  std::uniform_int_distribution<int> state(0, 2);
  for (std::size_t k = 0; k < random_tables; ++k) {
    Strategy s;
    s.name = "p1-random-" + std::to_string(k);
    s.role = Role::Player1;
    for (int q = 0; q < 3; ++q)
      for (const auto& x : inputs) s.add("s" + std::to_string(q), x, out[pick(rng)], "s" + std::to_string(state(rng)));
    suite.push_back(std::move(s));
  }
  return suite;
}

std::string_view to_string(Winner w) { return w == Winner::Player1 ? "player1wins" : "player2wins"; }

namespace {

constexpr int kNone = -1;

// Integer form of a strategy table: inputs and outputs are letter ids.
struct Compiled {
  struct Rule {
    int emit = kNone;  // kNone is a skip
    int next = 0;
    int counter = 0;
  };
  std::string name;
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;
  std::vector<std::optional<Rule>> table;

  const Rule& rule(int state, int input, const std::vector<std::string>& state_names,
                   const std::vector<std::string>& input_names) const {
    const auto& r = table[static_cast<std::size_t>(state) * num_inputs + static_cast<std::size_t>(input)];
    if (!r)
      throw Error(ErrorKind::Validation, "strategy " + name + " has no rule for state " + state_names[state] + " on " +
                                             input_names[input]);
    return *r;
  }
};

Compiled compile(const Strategy& s, const std::vector<std::string>& inputs, const Mbca& target, bool may_skip,
                 std::vector<std::string>& state_names) {
  Compiled c;
  c.name = s.name;
  state_names = s.state_names();
  std::unordered_map<std::string, int> sid;
  for (std::size_t i = 0; i < state_names.size(); ++i) sid[state_names[i]] = static_cast<int>(i);
  c.num_states = state_names.size();
  c.num_inputs = inputs.size();
  c.table.assign(c.num_states * c.num_inputs, std::nullopt);
  for (const auto& [key, rule] : s.rules) {
    const auto in = std::find(inputs.begin(), inputs.end(), key.second);
    if (in == inputs.end())
      throw Error(ErrorKind::Validation, "strategy " + s.name + " reads `" + key.second + "`, which never occurs");
    Compiled::Rule r;
    r.next = sid.at(rule.next);
    r.counter = rule.counter;
    if (rule.emit == kSkip) {
      if (!may_skip) throw Error(ErrorKind::Validation, "strategy " + s.name + " skips, but only player 2 may skip");
    } else {
      const auto letter = target.find_letter(rule.emit);
      if (!letter) throw Error(ErrorKind::Validation, "strategy " + s.name + " emits unknown letter " + rule.emit);
      r.emit = static_cast<int>(*letter);
    }
    c.table[static_cast<std::size_t>(sid.at(key.first)) * c.num_inputs + static_cast<std::size_t>(in - inputs.begin())] = r;
  }
  return c;
}

struct Joint {
  int s1 = 0, s2 = 0;
  Counter c1 = 0, c2 = 0;
  int qa = 0, qb = 0;  // kNone once blocked
  Counter ca = 0, cb = 0;
  int last = 0;  // player 1's next input

  bool same_discrete(const Joint& o) const {
    return s1 == o.s1 && s2 == o.s2 && qa == o.qa && qb == o.qb && last == o.last;
  }
};

struct Turn {
  LetterId a = 0;
  int b = kNone;
};

// One automaton move; a blocked run stays blocked.
void advance(const Mbca& m, int& q, Counter& c, LetterId x) {
  if (q == kNone) return;
  const auto next = step(m, {static_cast<StateId>(q), c}, x);
  if (!next) {
    q = kNone;
    c = 0;
    return;
  }
  q = static_cast<int>(next->state);
  c = next->counter;
}

void bump(Counter& c, int delta, const std::string& who) {
  c += delta;
  if (c < 0) throw Error(ErrorKind::Validation, "strategy " + who + " drove its counter below zero");
}

}  // namespace

PlayRecord play(const Mbca& a, const Mbca& b, const Strategy& s1, const Strategy& s2, std::size_t horizon) {
  if (s1.role != Role::Player1) throw Error(ErrorKind::Validation, "strategy " + s1.name + " is not a player-1 table");
  if (s2.role != Role::Player2) throw Error(ErrorKind::Validation, "strategy " + s2.name + " is not a player-2 table");
  std::vector<std::string> in1{std::string(kStart), std::string(kSkip)};
  for (const auto& x : b.alphabet()) in1.push_back(x);
  const std::vector<std::string>& in2 = a.alphabet();
  std::vector<std::string> names1, names2;
  const Compiled t1 = compile(s1, in1, a, false, names1);
  const Compiled t2 = compile(s2, in2, b, true, names2);

  const double joint_size = static_cast<double>(t1.num_states) * static_cast<double>(t2.num_states) *
                            static_cast<double>(a.num_states() + 1) * static_cast<double>(b.num_states() + 1) *
                            static_cast<double>(in1.size());
  const std::size_t skip_budget = std::size_t{1} << static_cast<int>(std::min(joint_size, 20.0));

  Joint j;
  j.qa = static_cast<int>(a.initial());
  j.qb = static_cast<int>(b.initial());
  std::vector<Joint> history;
  std::vector<Turn> turns;
  std::size_t skips = 0;
  for (std::size_t t = 0;; ++t) {
    // Closure: an earlier joint state with the same discrete part from which the segment
    // replays forever. Automaton counters that grow must stay off zero along the segment.
    Counter min_a = j.ca, min_b = j.cb;
    for (std::size_t i = t; i-- > 0;) {
      const Joint& h = history[i];
      min_a = std::min(min_a, h.ca);
      min_b = std::min(min_b, h.cb);
      if (!h.same_discrete(j)) continue;
      const Counter da = j.ca - h.ca, db = j.cb - h.cb;
      if (j.c1 < h.c1 || j.c2 < h.c2 || da < 0 || db < 0) continue;
      if ((da > 0 && min_a == 0) || (db > 0 && min_b == 0)) continue;

      PlayRecord r;
      r.turns = t;
      StateSet inf_a = 0, inf_b = 0;
      bool a_blocked = j.qa == kNone, b_blocked = j.qb == kNone;
      for (std::size_t k = 0; k < t; ++k) {
        auto& aw = k < i ? r.a_word.prefix : r.a_word.period;
        auto& bw = k < i ? r.b_word.prefix : r.b_word.period;
        aw.push_back(turns[k].a);
        if (turns[k].b != kNone) bw.push_back(static_cast<LetterId>(turns[k].b));
        if (k >= i) {
          const Joint& after = k + 1 < t ? history[k + 1] : j;
          if (after.qa != kNone) inf_a |= singleton(static_cast<StateId>(after.qa));
          if (turns[k].b != kNone && after.qb != kNone) inf_b |= singleton(static_cast<StateId>(after.qb));
        }
      }
      r.b_infinite = !r.b_word.period.empty();
      r.a_member = !a_blocked && a.accepts_set(inf_a);
      r.b_member = r.b_infinite && !b_blocked && b.accepts_set(inf_b);
      r.verdict = r.b_infinite && r.a_member == r.b_member ? Winner::Player2 : Winner::Player1;
      if (recompute_verdict(a, b, r) != r.verdict)
        throw Error(ErrorKind::Internal, "live verdict disagrees with membership of the recorded words");
      return r;
    }
    if (t >= horizon)
      throw Error(ErrorKind::NoPeriodicClosure, "no periodic closure within " + std::to_string(horizon) + " turns");

    history.push_back(j);
    const auto& r1 = t1.rule(j.s1, j.last, names1, in1);
    bump(j.c1, r1.counter, t1.name);
    j.s1 = r1.next;
    const auto x = static_cast<LetterId>(r1.emit);
    advance(a, j.qa, j.ca, x);
    const auto& r2 = t2.rule(j.s2, static_cast<int>(x), names2, in2);
    bump(j.c2, r2.counter, t2.name);
    j.s2 = r2.next;
    if (r2.emit == kNone) {
      if (++skips > skip_budget)
        throw Error(ErrorKind::SkipBudgetExhausted,
                    "strategy " + t2.name + " skipped more than " + std::to_string(skip_budget) + " turns in a row");
      j.last = 1;
    } else {
      skips = 0;
      advance(b, j.qb, j.cb, static_cast<LetterId>(r2.emit));
      j.last = r2.emit + 2;
    }
    turns.push_back({x, r2.emit});
  }
}

Winner recompute_verdict(const Mbca& a, const Mbca& b, const PlayRecord& r) {
  if (r.b_word.period.empty()) return Winner::Player1;
  return member(a, r.a_word) == member(b, r.b_word) ? Winner::Player2 : Winner::Player1;
}

std::string TournamentReport::summary() const {
  std::ostringstream out;
  out << plays << " plays, " << losses.size() << " losses, " << errors.size() << " errors; ";
  if (clean())
    out << "no loss found, which is evidence, not proof, that player 2 wins";
  else
    out << "player 2's strategy is not winning";
  return out.str();
}

TournamentReport validate_strategy(const Mbca& a, const Mbca& b, const Strategy& s2, const std::vector<Strategy>& suite,
                                   std::size_t horizon) {
  struct Slot {
    std::optional<PlayRecord> record;
    std::string error;
  };
  std::vector<Slot> slots(suite.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < suite.size();) {
      try {
        slots[i].record = play(a, b, suite[i], s2, horizon);
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, suite.size() / 16));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  TournamentReport report;
  report.plays = suite.size();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (slots[i].record) {
      if (slots[i].record->verdict == Winner::Player1) report.losses.emplace_back(suite[i].name, *slots[i].record);
    } else {
      report.errors.emplace_back(suite[i].name, slots[i].error);
    }
  }
  return report;
}

namespace {

// Player 2 walks the one-way chain of gadgets of a finite D_1^s machine, staying `want(n)`
// gadgets deep after seeing n bridge letters from player 1 (n capped at `cap`).
Strategy chase(const std::string& name, const std::vector<std::string>& inputs, int cap, std::function<int(int)> want) {
  return tabulate(name, Role::Player2, inputs, "n0g1", [=](const std::string& key, const std::string& x) {
    int n = 0, g = 0;
    std::sscanf(key.c_str(), "n%dg%d", &n, &g);
    n = std::min(cap, n + (x == "fwd" ? 1 : 0));
    std::string emit = "j1";
    if (g < want(n)) {
      emit = "fwd";
      ++g;
    }
    return std::make_pair(emit, "n" + std::to_string(n) + "g" + std::to_string(g));
  });
}

// C_1^3 <= D_1^w: pump the counter to 3, enter, cross once, then cross again whenever player 1
// crosses a bridge; after player 1's third bridge its run has blocked, so block B as well.
Strategy pump_and_cross() {
  static const std::vector<std::string> script{"up", "up", "up", "in", "x"};
  return tabulate("pump-and-cross", Role::Player2, {"j1", "fwd"}, "k0n0b", [](const std::string& key,
                                                                               const std::string& x) {
    int k = 0, n = 0;
    char side = 'b';
    std::sscanf(key.c_str(), "k%dn%d%c", &k, &n, &side);
    n = std::min(3, n + (x == "fwd" ? 1 : 0));
    std::string emit;
    if (k < static_cast<int>(script.size())) {
      emit = script[k++];
    } else if (n == 3) {
      emit = "in";
    } else if (side != (n % 2 == 0 ? 'b' : 'a')) {
      emit = "x";
      side = side == 'a' ? 'b' : 'a';
    } else {
      emit = "j1";
    }
    return std::make_pair(emit, "k" + std::to_string(k) + "n" + std::to_string(n) + side);
  });
}

}  // namespace

std::vector<WitnessPair> gallery_witnesses() {
  return {
      {"C_1^1", "D_1^2", chase("chase-2", {"j1"}, 0, [](int) { return 2; })},
      {"C_1^2", "D_1^3", chase("chase-3", {"j1", "fwd"}, 1, [](int n) { return n == 0 ? 2 : 3; })},
      {"C_1^3", "D_1^w*1", pump_and_cross()},
  };
}

}  // namespace mbca
