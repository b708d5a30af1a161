#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbca/hierarchy.hpp"
#include "mbca/naming.hpp"

namespace mbca {

/// Everything the analyzer says about one machine, as plain strings and numbers so that it
/// survives a trip through the structured form unchanged.
struct Report {
  struct MachineSummary {
    std::string name;
    int states = 0;
    int letters = 0;
    std::string initial;
    int accepted_sets = 0;
    int max_increment = 0;

    friend bool operator==(const MachineSummary&, const MachineSummary&) = default;
  };
  struct SetEntry {
    std::string set;
    std::string sign;

    friend bool operator==(const SetEntry&, const SetEntry&) = default;
  };
  struct LoopEntry {
    std::string anchor;
    std::string level;
    std::string set;
    std::string kind;
    std::string sign;
    Counter dip = 0;
    Counter min_anchor_counter = 0;
    std::string witness;  // empty when no witness word exists

    friend bool operator==(const LoopEntry&, const LoopEntry&) = default;
  };
  struct ChainEntry {
    std::vector<std::string> sets;
    std::string sign;
    int length = 0;

    friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
  };
  struct SuperchainEntry {
    std::string length;
    std::string sign;
    std::vector<ChainEntry> finite_part;
    std::vector<std::string> omega_part;  // one "L+(...) ~ L-(...)" line per link

    friend bool operator==(const SuperchainEntry&, const SuperchainEntry&) = default;
  };
  struct Invariants {
    int m = 0;
    std::string n;
    int s = 0;
    std::string coarse_class;

    friend bool operator==(const Invariants&, const Invariants&) = default;
  };

  MachineSummary machine;
  std::vector<SetEntry> essential_sets;
  std::vector<LoopEntry> loops;
  std::vector<ChainEntry> chains;
  std::vector<SuperchainEntry> superchains;
  Invariants invariants;
  std::string name;
  std::optional<std::string> other_name;
  std::optional<std::string> verdict;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Which sections to fill; the name needs the full derivation and is the slowest part.
struct ReportSections {
  bool loops = true;
  bool chains = true;
  bool superchains = true;
  bool name = true;
};

Report analyze(const Mbca& m, ReportSections sections = {});

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// The structured form: pretty-printed JSON with sorted keys.
std::string to_structured(const Report& r);
std::string to_text(const Report& r);

}  // namespace mbca
