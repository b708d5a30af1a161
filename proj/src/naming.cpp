#include "mbca/naming.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <sstream>

namespace mbca {

void check_name(const WadgeName& n) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedName, why); };
  for (std::size_t i = 0; i < n.blocks.size(); ++i) {
    const auto& b = n.blocks[i];
    if (b.letter != 'C' && b.letter != 'D' && b.letter != 'E') bad("block letter must be C, D or E");
    if (b.letter != 'E' && i + 1 != n.blocks.size()) bad("only the last block may be C or D");
    if (b.m < 1) bad("block index m must be positive");
    if (b.alpha < OrdinalW2{0, 1}) bad("block exponent must be at least 1");
    if (i > 0 && b.m >= n.blocks[i - 1].m) bad("block indices must strictly decrease");
  }
  const bool bare = n.blocks.empty() || n.blocks.back().letter == 'E';
  if (bare != n.terminal_bare_e) bad("terminal E must follow exactly the E-terminated names");
}

std::string render(const WadgeName& n) {
  check_name(n);
  if (n.blocks.empty()) return "E";
  std::string out;
  for (const auto& b : n.blocks) {
    if (!out.empty()) out += ' ';
    out += b.letter;
    out += '_' + std::to_string(b.m) + '^' + to_string(b.alpha);
  }
  return out;
}

WadgeName parse_name(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string t; is >> t;) tokens.push_back(t);
  auto bad = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedName, "'" + std::string(text) + "': " + why);
  };
  if (tokens.empty()) bad("empty name");
  WadgeName n;
  if (tokens.size() == 1 && tokens[0] == "E") return n;
  for (const auto& t : tokens) {
    const auto caret = t.find('^');
    if (t.size() < 5 || t[1] != '_' || caret == std::string::npos) bad("expected LETTER_m^alpha");
    NameBlock b;
    b.letter = t[0];
    const std::string_view ms(t.data() + 2, caret - 2);
    auto [ptr, ec] = std::from_chars(ms.data(), ms.data() + ms.size(), b.m);
    if (ec != std::errc{} || ptr != ms.data() + ms.size()) bad("bad index in '" + t + "'");
    auto alpha = parse_ordinal(std::string_view(t).substr(caret + 1));
    if (!alpha) bad("bad exponent in '" + t + "'");
    b.alpha = *alpha;
    n.blocks.push_back(b);
  }
  n.terminal_bare_e = n.blocks.back().letter == 'E';
  check_name(n);
  return n;
}

WadgeName single_block(char letter, int m, OrdinalW2 alpha) {
  WadgeName n{{{letter, m, alpha}}, letter == 'E'};
  check_name(n);
  return n;
}

DerivationContext derive(const Analysis& a, const InvariantTriple& inv) {
  if (inv.s != 0 || inv.m == 0)
    throw Error(ErrorKind::NotDerivable, "only machines with both superchain signs are derived");
  const Mbca& m = a.machine();
  const Counter limit = a.node_ceiling() + ReachBounds(m).cutoff;
  DerivationContext ctx{0, std::vector<std::optional<Counter>>(m.num_states()), {}, {}};
  for (StateId q = 0; q < m.num_states(); ++q) {
    std::optional<Counter> previous = Counter{0};
    if (a.filter()) previous = a.filter()->thresholds[q];
    if (!previous) continue;
    auto n_q = least_monotone(limit, [&](Counter c) {
      return a.best({q, c}, true) >= inv.n && a.best({q, c}, false) >= inv.n;
    });
    if (!n_q) continue;
    ctx.sub_states |= singleton(q);
    ctx.thresholds[q] = std::max(*n_q, *previous);
  }
  ctx.derived = restrict_to(m, ctx.sub_states, m.name() + "_d");
  ctx.filter.thresholds = ctx.thresholds;
  return ctx;
}

WadgeName name(const Mbca& machine) {
  WadgeName out;
  Mbca current = machine;
  std::optional<LoopFilter> filter;
  int previous_m = INT_MAX;
  for (;;) {
    Analysis a(current, filter);
    const InvariantTriple inv = a.invariants();
    if (inv.m == 0) break;
    if (inv.m >= previous_m) throw Error(ErrorKind::Internal, "derivation did not decrease m");
    if (inv.s != 0) {
      out.blocks.push_back({inv.s > 0 ? 'C' : 'D', inv.m, inv.n});
      out.terminal_bare_e = false;
      break;
    }
    out.blocks.push_back({'E', inv.m, inv.n});
    DerivationContext ctx = derive(a, inv);
    current = std::move(ctx.derived);
    filter = std::move(ctx.filter);
    previous_m = inv.m;
  }
  check_name(out);
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Less: return "less";
    case Verdict::Greater: return "greater";
    case Verdict::Equivalent: return "equivalent";
    case Verdict::Dual: return "dual";
  }
  return "?";
}

namespace {

// A name as a sequence of blocks, with the bare terminal as a block above every index.
struct Item {
  char letter;
  bool bare;
  int m;
  OrdinalW2 alpha;
};

std::vector<Item> items(const WadgeName& n) {
  std::vector<Item> out;
  for (const auto& b : n.blocks) out.push_back({b.letter, false, b.m, b.alpha});
  if (n.terminal_bare_e) out.push_back({'E', true, 0, {}});
  return out;
}

bool same_indices(const Item& x, const Item& y) {
  if (x.bare || y.bare) return x.bare && y.bare;
  return x.m == y.m && x.alpha == y.alpha;
}

bool indices_below(const Item& x, const Item& y) {
  if (y.bare) return !x.bare;
  if (x.bare) return false;
  return x.m < y.m || (x.m == y.m && x.alpha < y.alpha);
}

}  // namespace

bool name_leq(const WadgeName& a, const WadgeName& b) {
  check_name(a);
  check_name(b);
  // The loop-free class is the bottom degree.
  if (a.blocks.empty()) return true;
  if (b.blocks.empty()) return false;
  const auto x = items(a), y = items(b);
  const std::size_t limit = std::min(x.size(), y.size());
  for (std::size_t j = 0; j <= limit; ++j) {
    if (j > 0 && !same_indices(x[j - 1], y[j - 1])) break;
    if (j == x.size() && j > 0 && (y[j - 1].letter == 'E' || y[j - 1].letter == x[j - 1].letter)) return true;
    if (j < limit && indices_below(x[j], y[j])) return true;
  }
  return false;
}

Verdict compare(const WadgeName& a, const WadgeName& b) {
  const bool le = name_leq(a, b), ge = name_leq(b, a);
  if (le && ge) return Verdict::Equivalent;
  if (le) return Verdict::Less;
  if (ge) return Verdict::Greater;
  const bool dual = a.blocks.size() == b.blocks.size() && !a.blocks.empty() &&
                    std::equal(a.blocks.begin(), a.blocks.end() - 1, b.blocks.begin()) &&
                    a.blocks.back().m == b.blocks.back().m && a.blocks.back().alpha == b.blocks.back().alpha &&
                    a.blocks.back().letter != 'E' && b.blocks.back().letter != 'E' &&
                    a.blocks.back().letter != b.blocks.back().letter;
  if (dual) return Verdict::Dual;
  throw Error(ErrorKind::Internal, "names " + render(a) + " and " + render(b) + " are incomparable");
}

std::strong_ordering operator<=>(const CnfOrdinal& a, const CnfOrdinal& b) {
  auto i = a.terms.begin(), j = b.terms.begin();
  for (; i != a.terms.end() && j != b.terms.end(); ++i, ++j) {
    if (i->first != j->first) return i->first <=> j->first;
    if (i->second != j->second) return i->second <=> j->second;
  }
  if (i != a.terms.end()) return std::strong_ordering::greater;
  if (j != b.terms.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string to_string(const CnfOrdinal& o) {
  if (o.terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : o.terms) {
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
      continue;
    }
    out += e == 1 ? "w" : "w^" + std::to_string(e);
    if (c != 1) out += "*" + std::to_string(c);
  }
  return out;
}

CnfOrdinal degree_rank(const WadgeName& n) {
  check_name(n);
  CnfOrdinal out;
  auto add = [&](int e, Counter c) {
    if (c > 0) out.terms[e] += c;
  };
  for (const auto& b : n.blocks) {
    add(2 * b.m - 1, b.alpha.p);
    add(2 * b.m - 2, 2 * b.alpha.s - (b.alpha.p == 0 ? 1 : 0));
  }
  if (n.terminal_bare_e && !n.blocks.empty()) add(2 * n.blocks.back().m - 2, 1);
  return out;
}

}  // namespace mbca
