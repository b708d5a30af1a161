#include "mbca/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mbca {

std::string_view to_string(LoopKind k) { return k == LoopKind::Plus ? "+" : "="; }

UPWord parse_upword(const Mbca& m, std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorKind::Parse, "word must have the form 'u ; v'");
  auto letters = [&](std::string_view part) {
    std::vector<LetterId> out;
    std::istringstream is{std::string(part)};
    std::string tok;
    while (is >> tok) {
      auto a = m.find_letter(tok);
      if (!a) throw Error(ErrorKind::Parse, "letter '" + tok + "' is not in the alphabet");
      out.push_back(*a);
    }
    return out;
  };
  UPWord w{letters(text.substr(0, semi)), letters(text.substr(semi + 1))};
  if (w.period.empty()) throw Error(ErrorKind::Parse, "period must be nonempty");
  return w;
}

std::string format_upword(const Mbca& m, const UPWord& w) {
  std::string out;
  for (LetterId a : w.prefix) out += m.alphabet()[a] + ' ';
  out += ';';
  for (LetterId a : w.period) out += ' ' + m.alphabet()[a];
  return out;
}

UPWord normalize(const UPWord& w) {
  UPWord out = w;
  const std::size_t n = out.period.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool root = true;
    for (std::size_t i = d; i < n && root; ++i) root = out.period[i] == out.period[i - d];
    if (root) {
      out.period.resize(d);
      break;
    }
  }
  while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
    out.prefix.pop_back();
    std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
  }
  return out;
}

Configuration RunTrace::at(std::size_t i) const {
  if (i < configs.size() || outcome == RunOutcome::Blocked) return configs.at(i);
  const std::size_t off = i - cycle_start;
  const std::size_t reps = off / cycle_len;
  Configuration c = configs[cycle_start + off % cycle_len];
  c.counter += static_cast<Counter>(reps) * shift;
  return c;
}

namespace {

// Boundaries of the period visited before a repeat is guaranteed: counters at a fixed
// state must strictly decrease between boundaries, and each period adds at most
// max_increment * |v|.
std::size_t boundary_cap(const Mbca& m, const UPWord& w, Counter after_prefix) {
  const double k = static_cast<double>(m.num_states());
  const double d = static_cast<double>(m.max_increment()) * static_cast<double>(w.period.size());
  const double bound = (static_cast<double>(after_prefix) + 2.0) * std::pow(d + 2.0, k) * (k + 1.0);
  return static_cast<std::size_t>(std::min(bound, 2.0e6));
}

}  // namespace

RunTrace run(const Mbca& m, const UPWord& w) {
  RunTrace t;
  Configuration c{m.initial(), 0};
  t.configs.push_back(c);
  auto advance = [&](LetterId a) {
    auto next = step(m, c, a);
    if (!next) {
      t.outcome = RunOutcome::Blocked;
      t.blocked_at = t.configs.size() - 1;
      return false;
    }
    c = *next;
    t.configs.push_back(c);
    return true;
  };
  for (LetterId a : w.prefix)
    if (!advance(a)) return t;

  // Per state: lowest counter seen at a period boundary, and where.
  struct Seen {
    Counter counter;
    std::size_t index;
  };
  std::vector<std::optional<Seen>> lowest(m.num_states());
  const std::size_t cap = boundary_cap(m, w, c.counter);
  for (std::size_t boundary = 0; boundary <= cap; ++boundary) {
    const std::size_t here = t.configs.size() - 1;
    auto& low = lowest[c.state];
    if (low && low->counter <= c.counter) {
      t.cycle_start = low->index;
      t.cycle_len = here - low->index;
      t.shift = c.counter - low->counter;
      t.outcome = t.shift == 0 ? RunOutcome::Periodic : RunOutcome::Ramp;
      for (std::size_t i = t.cycle_start; i < here; ++i) t.inf_set |= singleton(t.configs[i].state);
      return t;
    }
    if (!low || c.counter < low->counter) low = Seen{c.counter, here};
    for (LetterId a : w.period)
      if (!advance(a)) return t;
  }
  throw Error(ErrorKind::CapExceeded, "run did not close within the boundary bound");
}

bool member(const Mbca& m, const UPWord& w) {
  const auto t = run(m, w);
  return t.outcome != RunOutcome::Blocked && m.accepts_set(t.inf_set);
}

LoopWitness extract_loop_witness(const RunTrace& t) {
  if (t.outcome == RunOutcome::Blocked) throw Error(ErrorKind::Internal, "blocked run has no loop");
  std::size_t low = t.cycle_start;
  for (std::size_t i = t.cycle_start; i < t.cycle_start + t.cycle_len; ++i)
    if (t.configs[i].counter < t.configs[low].counter) low = i;
  // Later repetitions only sit higher, so `low` is a minimum for the whole suffix.
  if (t.shift > 0 && t.configs[low].counter == 0) low += t.cycle_len;

  LoopWitness w;
  w.anchor_index = low;
  w.close_index = low + t.cycle_len;
  const Configuration anchor = t.at(low);
  w.anchor_state = anchor.state;
  w.anchor_counter = anchor.counter;
  w.visited = t.inf_set;
  w.kind = t.shift > 0 ? LoopKind::Plus : LoopKind::Equal;
  w.level = anchor.counter == 0 ? Level::Z : Level::I;
  return w;
}

}  // namespace mbca
