#include "mbca/report.hpp"

#include <sstream>

namespace mbca {

namespace {

Report::ChainEntry chain_entry(const Mbca& m, const Chain& c) {
  Report::ChainEntry e;
  for (StateSet s : c.sets) e.sets.push_back(m.format_set(s));
  e.sign = sign_symbol(c.positive);
  e.length = static_cast<int>(c.sets.size());
  return e;
}

}  // namespace

Report analyze(const Mbca& m, ReportSections sections) {
  Report r;
  r.machine = {m.name(),
               static_cast<int>(m.num_states()),
               static_cast<int>(m.num_letters()),
               m.states()[m.initial()],
               static_cast<int>(m.accept_family().size()),
               m.max_increment()};
  Analysis a(m);
  for (const auto& e : a.essential_sets()) r.essential_sets.push_back({m.format_set(e.set), std::string(sign_symbol(e.positive))});
  if (sections.loops) {
    for (const auto& d : a.loops()) {
      Report::LoopEntry e{m.states()[d.anchor],
                          std::string(to_string(d.level)),
                          m.format_set(d.essential_set),
                          std::string(to_string(d.delta_kind)),
                          std::string(sign_symbol(d.positive)),
                          d.dip,
                          d.min_anchor_counter,
                          ""};
      try {
        e.witness = format_upword(m, witness_word(m, d));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::AnchorUnreachable) throw;
      }
      r.loops.push_back(std::move(e));
    }
  }
  if (sections.chains)
    for (const auto& c : a.chains()) r.chains.push_back(chain_entry(m, c));
  if (sections.superchains) {
    for (const auto& sc : a.superchains()) {
      Report::SuperchainEntry e;
      e.length = to_string(sc.length);
      e.sign = sign_symbol(sc.positive);
      for (const auto& c : sc.finite_part) e.finite_part.push_back(chain_entry(m, c));
      for (const auto& link : sc.omega_part) e.omega_part.push_back(describe(m, link.pos_loop) + " ~ " + describe(m, link.neg_loop));
      r.superchains.push_back(std::move(e));
    }
  }
  const auto inv = a.invariants();
  r.invariants = {inv.m, to_string(inv.n), inv.s, std::string(1, inv.coarse_class)};
  if (sections.name) r.name = render(name(m));
  return r;
}

namespace {

using nlohmann::json;

json chain_json(const Report::ChainEntry& c) { return {{"sets", c.sets}, {"sign", c.sign}, {"length", c.length}}; }

Report::ChainEntry chain_from(const json& j) {
  return {j.at("sets").get<std::vector<std::string>>(), j.at("sign").get<std::string>(), j.at("length").get<int>()};
}

}  // namespace

nlohmann::json to_json(const Report& r) {
  json j;
  j["machine"] = {{"name", r.machine.name},
                  {"states", r.machine.states},
                  {"letters", r.machine.letters},
                  {"initial", r.machine.initial},
                  {"accepted_sets", r.machine.accepted_sets},
                  {"max_increment", r.machine.max_increment}};
  j["essential_sets"] = json::array();
  for (const auto& e : r.essential_sets) j["essential_sets"].push_back({{"set", e.set}, {"sign", e.sign}});
  j["loops"] = json::array();
  for (const auto& l : r.loops)
    j["loops"].push_back({{"anchor", l.anchor},
                          {"level", l.level},
                          {"set", l.set},
                          {"kind", l.kind},
                          {"sign", l.sign},
                          {"dip", l.dip},
                          {"min_anchor_counter", l.min_anchor_counter},
                          {"witness", l.witness}});
  j["chains"] = json::array();
  for (const auto& c : r.chains) j["chains"].push_back(chain_json(c));
  j["superchains"] = json::array();
  for (const auto& s : r.superchains) {
    json fin = json::array();
    for (const auto& c : s.finite_part) fin.push_back(chain_json(c));
    j["superchains"].push_back({{"length", s.length}, {"sign", s.sign}, {"finite_part", fin}, {"omega_part", s.omega_part}});
  }
  j["invariants"] = {{"m", r.invariants.m},
                     {"n", r.invariants.n},
                     {"s", r.invariants.s},
                     {"coarse_class", r.invariants.coarse_class}};
  j["name"] = r.name;
  if (r.other_name) j["other_name"] = *r.other_name;
  if (r.verdict) j["verdict"] = *r.verdict;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    const auto& m = j.at("machine");
    r.machine = {m.at("name").get<std::string>(),   m.at("states").get<int>(),        m.at("letters").get<int>(),
                 m.at("initial").get<std::string>(), m.at("accepted_sets").get<int>(), m.at("max_increment").get<int>()};
    for (const auto& e : j.at("essential_sets"))
      r.essential_sets.push_back({e.at("set").get<std::string>(), e.at("sign").get<std::string>()});
    for (const auto& l : j.at("loops"))
      r.loops.push_back({l.at("anchor").get<std::string>(), l.at("level").get<std::string>(), l.at("set").get<std::string>(),
                         l.at("kind").get<std::string>(), l.at("sign").get<std::string>(), l.at("dip").get<Counter>(),
                         l.at("min_anchor_counter").get<Counter>(), l.at("witness").get<std::string>()});
    for (const auto& c : j.at("chains")) r.chains.push_back(chain_from(c));
    for (const auto& s : j.at("superchains")) {
      Report::SuperchainEntry e;
      e.length = s.at("length").get<std::string>();
      e.sign = s.at("sign").get<std::string>();
      for (const auto& c : s.at("finite_part")) e.finite_part.push_back(chain_from(c));
      e.omega_part = s.at("omega_part").get<std::vector<std::string>>();
      r.superchains.push_back(std::move(e));
    }
    const auto& inv = j.at("invariants");
    r.invariants = {inv.at("m").get<int>(), inv.at("n").get<std::string>(), inv.at("s").get<int>(),
                    inv.at("coarse_class").get<std::string>()};
    r.name = j.at("name").get<std::string>();
    if (j.contains("other_name")) r.other_name = j.at("other_name").get<std::string>();
    if (j.contains("verdict")) r.verdict = j.at("verdict").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed report: ") + e.what());
  }
}

std::string to_structured(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "machine " << r.machine.name << ": " << r.machine.states << " states, " << r.machine.letters
      << " letters, initial " << r.machine.initial << ", " << r.machine.accepted_sets << " accepted sets\n";
  out << "essential sets:\n";
  for (const auto& e : r.essential_sets) out << "  " << e.sign << " " << e.set << "\n";
  if (!r.loops.empty()) {
    out << "loops:\n";
    for (const auto& l : r.loops) {
      out << "  L" << l.sign << "(" << l.anchor << ", " << l.level << ", " << l.set << ", " << l.kind << ") dip " << l.dip
          << " from " << l.min_anchor_counter;
      if (!l.witness.empty()) out << " witness " << l.witness;
      out << "\n";
    }
  }
  if (!r.chains.empty()) {
    out << "chains:\n";
    for (const auto& c : r.chains) {
      out << "  " << c.sign << " length " << c.length << ":";
      for (const auto& s : c.sets) out << " " << s;
      out << "\n";
    }
  }
  if (!r.superchains.empty()) {
    out << "superchains:\n";
    for (const auto& s : r.superchains) {
      out << "  " << s.sign << " length " << s.length << "\n";
      for (const auto& c : s.finite_part) {
        out << "    chain";
        for (const auto& set : c.sets) out << " " << set;
        out << "\n";
      }
      for (const auto& w : s.omega_part) out << "    link " << w << "\n";
    }
  }
  out << "invariants: m=" << r.invariants.m << " n=" << r.invariants.n << " s=" << r.invariants.s << " class "
      << r.invariants.coarse_class << "\n";
  if (!r.name.empty()) out << "name: " << r.name << "\n";
  if (r.other_name) out << "other: " << *r.other_name << "\n";
  if (r.verdict) out << "verdict: " << *r.verdict << "\n";
  return out.str();
}

}  // namespace mbca
