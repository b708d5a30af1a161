#pragma once

#include "mbca/hierarchy.hpp"

namespace mbca::testing {

/// Chain/superchain invariants of a counter-free machine (every delta 0), computed on the
/// plain transition graph: essential sets are reachable strongly connected subsets, and a
/// superchain is an alternating path of maximal-chain sets under graph reachability.
InvariantTriple wagner_invariants(const Mbca& m);

}  // namespace mbca::testing
