#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbca/hierarchy.hpp"

namespace mbca {

struct NameBlock {
  char letter = 'E';  // C, D or E
  int m = 1;
  OrdinalW2 alpha;

  friend bool operator==(const NameBlock&, const NameBlock&) = default;
};

/// E_{m1}^{a1} ... H_{mk}^{ak}, or the bare class E.
///
/// A name whose last block is an E-block ends in the bare E of a derived machine without
/// loops; `terminal_bare_e` records that and is implied by the blocks.
struct WadgeName {
  std::vector<NameBlock> blocks;
  bool terminal_bare_e = true;

  friend bool operator==(const WadgeName&, const WadgeName&) = default;
};

/// Throws MalformedName unless the block grammar and its invariants hold.
void check_name(const WadgeName& n);
std::string render(const WadgeName& n);
WadgeName parse_name(std::string_view text);
/// Name of a coarse class C/D/E with indices (m, alpha); E blocks get the bare terminal.
WadgeName single_block(char letter, int m, OrdinalW2 alpha);

struct DerivationContext {
  StateSet sub_states = 0;
  std::vector<std::optional<Counter>> thresholds;  // n_q, set exactly for states in sub_states
  Mbca derived;                                     // restriction of the machine to sub_states
  LoopFilter filter;                                // thresholds for the filtered re-analysis
};

/// Throws NotDerivable unless inv.s == 0.
DerivationContext derive(const Analysis& a, const InvariantTriple& inv);

WadgeName name(const Mbca& m);

enum class Verdict { Less, Greater, Equivalent, Dual };
std::string_view to_string(Verdict v);

/// The ordering condition on names, read as a characterization.
bool name_leq(const WadgeName& a, const WadgeName& b);
Verdict compare(const WadgeName& a, const WadgeName& b);

/// Ordinal below omega^omega in Cantor normal form: exponent -> coefficient.
struct CnfOrdinal {
  std::map<int, Counter, std::greater<>> terms;

  friend bool operator==(const CnfOrdinal&, const CnfOrdinal&) = default;
  friend std::strong_ordering operator<=>(const CnfOrdinal& a, const CnfOrdinal& b);
};
std::string to_string(const CnfOrdinal& o);

CnfOrdinal degree_rank(const WadgeName& n);

}  // namespace mbca
