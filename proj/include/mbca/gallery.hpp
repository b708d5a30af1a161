#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbca/automaton.hpp"
#include "mbca/naming.hpp"

namespace mbca {

/// A class C_m^alpha, D_m^alpha or E_m^alpha; E classes may carry the class of their
/// derived machine as a tail.
struct ClassSpec {
  char letter = 'C';
  int m = 1;
  OrdinalW2 alpha{0, 1};
  std::shared_ptr<const ClassSpec> tail;
};

/// Reads a spec written in the name grammar, e.g. `E_2^1 C_1^w*1`.
ClassSpec parse_class_spec(std::string_view text);
ClassSpec spec_of(const WadgeName& n);
WadgeName induced_name(const ClassSpec& spec);

/// Desk-scale limits: m <= 4, alpha <= w*3+3, nesting depth <= 3, at most 64 states.
inline constexpr int kMaxGalleryM = 4;
inline constexpr int kMaxGalleryDepth = 3;

/// A machine whose name is induced_name(spec); throws UnsupportedSpec outside the limits.
Mbca canonical(const ClassSpec& spec);

/// Every spec with the given letters, m in [1, max_m] and alpha from the list, without tails.
std::vector<ClassSpec> gallery_box(const std::string& letters, int max_m, const std::vector<OrdinalW2>& alphas);

}  // namespace mbca
