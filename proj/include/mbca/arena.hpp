#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbca/automaton.hpp"
#include "mbca/run.hpp"

namespace mbca {

enum class Role { Player1 = 1, Player2 = 2 };

inline constexpr std::string_view kStart = "start";
inline constexpr std::string_view kSkip = "skip";

/// Finite-state strategy table with an optional blind counter.
///
/// Player 1 reads the opponent's last move (`start` before the first one, `skip` after a
/// skip) and emits a letter of A. Player 2 reads player 1's letter and emits a letter of B
/// or `skip`. The counter is never tested; a rule that would take it below zero is an error.
struct Strategy {
  struct Rule {
    std::string emit;
    std::string next;
    int counter = 0;
  };
  std::string name = "unnamed";
  Role role = Role::Player2;
  std::string initial;  // first state mentioned
  std::map<std::pair<std::string, std::string>, Rule> rules;  // (state, on) -> rule

  void add(const std::string& state, const std::string& on, const std::string& emit, const std::string& next,
           int counter = 0);
  std::vector<std::string> state_names() const;
};

Strategy parse_strategy(std::string_view text);
std::string format_strategy(const Strategy& s);

/// Player 2 repeats every letter of player 1.
Strategy copycat(const Mbca& a);

/// Builds a table by exploring a policy from `initial`; keys name the states.
Strategy tabulate(const std::string& name, Role role, const std::vector<std::string>& inputs,
                  const std::string& initial,
                  const std::function<std::pair<std::string, std::string>(const std::string&, const std::string&)>& policy);

/// Every one-state player-1 table for W(A, B) when there are at most `exhaustive_limit`,
/// otherwise a seeded sample of that many, plus `random_tables` seeded random 3-state tables.
std::vector<Strategy> player1_suite(const Mbca& a, const Mbca& b, std::uint32_t seed = 1,
                                    std::size_t exhaustive_limit = 1024, std::size_t random_tables = 64);

enum class Winner { Player1, Player2 };
std::string_view to_string(Winner w);

struct PlayRecord {
  UPWord a_word;
  UPWord b_word;     // period empty when player 2 stopped emitting
  bool b_infinite = true;
  bool a_member = false;
  bool b_member = false;
  Winner verdict = Winner::Player1;
  std::size_t turns = 0;  // turns played until the joint state repeated
};

inline constexpr std::size_t kDefaultHorizon = 4096;

/// Plays W(A, B) until the joint state (both tables, both configurations, last move) repeats
/// with every counter ramping safely. Throws NoPeriodicClosure past `horizon` turns and
/// SkipBudgetExhausted when player 2 skips more than 2^min(|joint|, 20) turns in a row.
PlayRecord play(const Mbca& a, const Mbca& b, const Strategy& s1, const Strategy& s2,
                std::size_t horizon = kDefaultHorizon);

/// The winner implied by the recorded words alone, via membership.
Winner recompute_verdict(const Mbca& a, const Mbca& b, const PlayRecord& r);

struct TournamentReport {
  std::size_t plays = 0;
  std::vector<std::pair<std::string, PlayRecord>> losses;  // player-1 strategy name, play
  std::vector<std::pair<std::string, std::string>> errors;  // player-1 strategy name, message
  bool clean() const { return losses.empty() && errors.empty(); }
  std::string summary() const;
};

/// Plays s2 against every suite member. A clean report is evidence for A <=_W B, not a proof.
TournamentReport validate_strategy(const Mbca& a, const Mbca& b, const Strategy& s2, const std::vector<Strategy>& suite,
                                   std::size_t horizon = kDefaultHorizon);

/// Hand-built player-2 strategies for pairs of canonical machines, written as class specs.
struct WitnessPair {
  std::string lesser;
  std::string greater;
  Strategy strategy;
};
std::vector<WitnessPair> gallery_witnesses();

}  // namespace mbca
