#pragma once

#include <random>
#include <string>
#include <vector>

#include "mbca/automaton.hpp"
#include "mbca/run.hpp"

namespace mbca::testing {

Mbca machine_a1();
Mbca machine_all();
Mbca machine_none();
Mbca machine_pump();
Mbca machine_g_omega();
/// Branch state b reached at counter 3; the negative site behind it needs three pops.
Mbca machine_threshold();

struct RandomShape {
  int states = 3;
  int letters = 2;
  bool counter_free = false;
  int max_delta = 2;
  double missing = 0.15;    // chance a (state, letter) has no entry at all
  double nonzero_only = 0.35;  // chance an entry exists only at nonzero level
};

Mbca random_machine(std::mt19937& rng, const RandomShape& shape);

/// Every Muller family over a machine's state sets is encoded as a bitmask over the 2^K subsets.
Mbca with_family(const Mbca& m, std::uint64_t family_bits);

/// Every counter-free machine on `states` states and `letters` letters: each (state, letter)
/// is missing or points anywhere, crossed with every Muller family.
std::vector<Mbca> exhaustive_counter_free(int states, int letters);

/// Language-preserving transform: state `victim` gets a twin; incoming transitions are split
/// between the two at random and the Muller family is lifted to all consistent preimages.
Mbca duplicate_state(const Mbca& m, StateId victim, std::mt19937& rng);

/// Brute-force reachable configurations with counter <= cap.
std::vector<std::vector<bool>> bfs_reach(const Mbca& m, Configuration from, Counter cap);

/// Inf sets of all non-blocked runs on u.v^omega with |u| <= max_u, 1 <= |v| <= max_v.
/// Prefixes reaching the same configuration are merged.
std::vector<StateSet> brute_inf_sets(const Mbca& m, std::size_t max_u, std::size_t max_v);

/// All ultimately periodic words with |u| <= max_u and 1 <= |v| <= max_v.
template <typename F>
void for_each_upword(std::size_t letters, std::size_t max_u, std::size_t max_v, F&& f) {
  std::vector<LetterId> u, v;
  auto rec_v = [&](auto&& self) -> void {
    if (!v.empty()) f(UPWord{u, v});
    if (v.size() == max_v) return;
    for (LetterId a = 0; a < letters; ++a) {
      v.push_back(a);
      self(self);
      v.pop_back();
    }
  };
  auto rec_u = [&](auto&& self) -> void {
    rec_v(rec_v);
    if (u.size() == max_u) return;
    for (LetterId a = 0; a < letters; ++a) {
      u.push_back(a);
      self(self);
      u.pop_back();
    }
  };
  rec_u(rec_u);
}

}  // namespace mbca::testing
