#include "mbca/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace mbca {

std::string_view to_string(Violation::Rule r) {
  switch (r) {
    case Violation::Rule::BlindnessViolation: return "BlindnessViolation";
    case Violation::Rule::DeltaOutOfRange: return "DeltaOutOfRange";
    case Violation::Rule::NondeterministicEntry: return "NondeterministicEntry";
    case Violation::Rule::DanglingReference: return "DanglingReference";
  }
  return "?";
}

std::string_view to_string(Level lv) { return lv == Level::Z ? "Z" : "I"; }

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << to_string(v.rule) << ": (" << v.state << ", " << v.letter;
    if (v.level) os << ", " << to_string(*v.level);
    os << ")";
    if (!v.detail.empty()) os << " " << v.detail;
    os << "\n";
  }
  return os.str();
}

void MbcaCandidate::both(const std::string& q, const std::string& a, const std::string& p, int delta) {
  transitions.push_back({q, a, Level::Z, p, delta});
  transitions.push_back({q, a, Level::I, p, delta});
}

void MbcaCandidate::nonzero(const std::string& q, const std::string& a, const std::string& p, int delta) {
  transitions.push_back({q, a, Level::I, p, delta});
}

std::optional<StateId> Mbca::find_state(std::string_view s) const {
  auto it = std::find(states_.begin(), states_.end(), s);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<LetterId> Mbca::find_letter(std::string_view s) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), s);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<LetterId>(it - alphabet_.begin());
}

int Mbca::max_increment() const {
  int best = 0;
  for (const auto& t : nonzero_)
    if (t) best = std::max(best, t->delta);
  return best;
}

int Mbca::max_abs_delta() const {
  int best = 0;
  for (const auto& t : nonzero_)
    if (t) best = std::max(best, std::abs(t->delta));
  return best;
}

std::string Mbca::format_set(StateSet s) const {
  std::string out = "{";
  bool first = true;
  for (StateId q = 0; q < states_.size(); ++q) {
    if (!contains(s, q)) continue;
    if (!first) out += ' ';
    out += states_[q];
    first = false;
  }
  return out + "}";
}

class MbcaBuilder {
 public:
  static ValidationResult run(const MbcaCandidate& raw) {
    ValidationResult result;
    auto& report = result.report;
    Mbca m;
    m.name_ = raw.name;
    m.alphabet_ = raw.alphabet;
    m.states_ = raw.states;
    if (m.states_.empty()) throw Error(ErrorKind::Parse, "machine has no states");
    if (m.states_.size() > kMaxStates)
      throw Error(ErrorKind::UnsupportedSpec, "more than 64 states");
    auto has_dupes = [](std::vector<std::string> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_dupes(m.states_)) throw Error(ErrorKind::Parse, "duplicate state name");
    if (has_dupes(m.alphabet_)) throw Error(ErrorKind::Parse, "duplicate letter");

    auto dangling = [&](const std::string& q, const std::string& a, std::optional<Level> lv,
                        std::string detail) {
      report.violations.push_back({Violation::Rule::DanglingReference, q, a, lv, std::move(detail)});
    };

    if (auto q0 = m.find_state(raw.initial)) {
      m.initial_ = *q0;
    } else {
      dangling(raw.initial, "", std::nullopt, "initial state is not declared");
    }

    const std::size_t cells = m.states_.size() * m.alphabet_.size();
    m.zero_.assign(cells, std::nullopt);
    m.nonzero_.assign(cells, std::nullopt);

    for (const auto& e : raw.transitions) {
      auto q = m.find_state(e.state);
      auto a = m.find_letter(e.letter);
      auto p = m.find_state(e.target);
      if (!q || !a || !p) {
        dangling(e.state, e.letter, e.level,
                 !q ? "unknown source state" : !a ? "unknown letter" : "unknown target " + e.target);
        continue;
      }
      const int lowest = e.level == Level::Z ? 0 : -1;
      if (e.delta < lowest) {
        report.violations.push_back({Violation::Rule::DeltaOutOfRange, e.state, e.letter, e.level,
                                     "delta " + std::to_string(e.delta)});
        continue;
      }
      auto& cell = (e.level == Level::Z ? m.zero_ : m.nonzero_)[m.index(*q, *a)];
      if (cell) {
        report.violations.push_back(
            {Violation::Rule::NondeterministicEntry, e.state, e.letter, e.level, "duplicate entry"});
        continue;
      }
      cell = Transition{*p, e.delta};
    }

    for (StateId q = 0; q < m.states_.size(); ++q) {
      for (LetterId a = 0; a < m.alphabet_.size(); ++a) {
        const auto& z = m.zero_[m.index(q, a)];
        const auto& i = m.nonzero_[m.index(q, a)];
        if (z && (!i || *i != *z)) {
          report.violations.push_back({Violation::Rule::BlindnessViolation, m.states_[q],
                                       m.alphabet_[a], Level::I,
                                       i ? "nonzero-level entry differs from zero-level entry"
                                         : "zero-level entry has no nonzero-level twin"});
        }
      }
    }

    for (const auto& members : raw.accept) {
      StateSet s = 0;
      bool ok = true;
      for (const auto& name : members) {
        if (auto q = m.find_state(name)) {
          s |= singleton(*q);
        } else {
          dangling(name, "", std::nullopt, "accepting set mentions unknown state");
          ok = false;
        }
      }
      if (ok) m.accept_.insert(s);
    }

    if (report.ok()) result.machine = std::move(m);
    return result;
  }

  static Mbca restrict(const Mbca& m, StateSet keep, const std::string& name) {
    Mbca out = m;
    out.name_ = name;
    for (StateId q = 0; q < m.states_.size(); ++q) {
      for (LetterId a = 0; a < m.alphabet_.size(); ++a) {
        for (auto* table : {&out.zero_, &out.nonzero_}) {
          auto& cell = (*table)[m.index(q, a)];
          if (cell && (!contains(keep, q) || !contains(keep, cell->target))) cell.reset();
        }
      }
    }
    std::set<StateSet> acc;
    for (StateSet s : m.accept_)
      if (is_subset(s, keep)) acc.insert(s);
    out.accept_ = std::move(acc);
    return out;
  }
};

ValidationResult validate(const MbcaCandidate& raw) { return MbcaBuilder::run(raw); }

Mbca build(const MbcaCandidate& raw) {
  auto r = validate(raw);
  if (!r.machine) throw Error(ErrorKind::Validation, r.report.describe());
  return std::move(*r.machine);
}

Mbca restrict_to(const Mbca& m, StateSet keep, const std::string& name) {
  return MbcaBuilder::restrict(m, keep, name);
}

std::optional<Configuration> step(const Mbca& m, Configuration c, LetterId a) {
  const auto& t = m.entry_at(c.state, a, c.counter);
  if (!t) return std::nullopt;
  return Configuration{t->target, c.counter + t->delta};
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_delta(const std::string& s, std::size_t line_no) {
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad counter delta '" + s + "'");
  return out;
}

}  // namespace

MbcaCandidate parse_mbca(std::string_view text) {
  MbcaCandidate c;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
    };
    const std::string& d = tok[0];
    if (d == "mbca") {
      if (tok.size() != 2) fail("expected 'mbca <name>'");
      c.name = tok[1];
      seen_header = true;
    } else if (d == "alphabet") {
      if (tok.size() < 2) fail("empty alphabet");
      c.alphabet.assign(tok.begin() + 1, tok.end());
    } else if (d == "states") {
      if (tok.size() < 2) fail("empty state list");
      c.states.assign(tok.begin() + 1, tok.end());
    } else if (d == "initial") {
      if (tok.size() != 2) fail("expected 'initial <state>'");
      c.initial = tok[1];
    } else if (d == "accept") {
      if (tok.size() < 3 || tok[1] != "{" || tok.back() != "}") fail("expected 'accept { <state>* }'");
      c.accept.emplace_back(tok.begin() + 2, tok.end() - 1);
    } else if (d == "trans") {
      if (tok.size() != 6) fail("expected 'trans <state> <letter> <Z|I> <state> <delta>'");
      Level lv;
      if (tok[3] == "Z") lv = Level::Z;
      else if (tok[3] == "I") lv = Level::I;
      else fail("level must be Z or I");
      c.transitions.push_back({tok[1], tok[2], lv, tok[4], parse_delta(tok[5], line_no)});
    } else {
      fail("unknown directive '" + d + "'");
    }
  }
  if (!seen_header) throw Error(ErrorKind::Parse, "missing 'mbca <name>' header");
  return c;
}

MbcaCandidate to_candidate(const Mbca& m) {
  MbcaCandidate c;
  c.name = m.name();
  c.alphabet = m.alphabet();
  c.states = m.states();
  c.initial = m.states()[m.initial()];
  for (StateSet s : m.accept_family()) {
    std::vector<std::string> members;
    for (StateId q = 0; q < m.num_states(); ++q)
      if (contains(s, q)) members.push_back(m.states()[q]);
    c.accept.push_back(std::move(members));
  }
  for (StateId q = 0; q < m.num_states(); ++q)
    for (LetterId a = 0; a < m.num_letters(); ++a)
      for (Level lv : {Level::Z, Level::I})
        if (const auto& t = m.entry(q, a, lv))
          c.transitions.push_back({m.states()[q], m.alphabet()[a], lv, m.states()[t->target], t->delta});
  return c;
}

std::string format_mbca(const Mbca& m) {
  std::ostringstream os;
  os << "mbca " << m.name() << "\n";
  os << "alphabet";
  for (const auto& a : m.alphabet()) os << ' ' << a;
  os << "\nstates";
  for (const auto& q : m.states()) os << ' ' << q;
  os << "\ninitial " << m.states()[m.initial()] << "\n";
  for (StateSet s : m.accept_family()) {
    os << "accept {";
    for (StateId q = 0; q < m.num_states(); ++q)
      if (contains(s, q)) os << ' ' << m.states()[q];
    os << " }\n";
  }
  for (const auto& t : to_candidate(m).transitions) {
    os << "trans " << t.state << ' ' << t.letter << ' ' << to_string(t.level) << ' ' << t.target << ' ';
    if (t.delta > 0) os << '+';
    os << t.delta << "\n";
  }
  return os.str();
}

}  // namespace mbca
