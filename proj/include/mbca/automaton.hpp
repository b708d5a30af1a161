#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mbca {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;
using Counter = std::int64_t;

/// Bitmask over the states of one machine (at most 64 states).
using StateSet = std::uint64_t;

inline constexpr std::size_t kMaxStates = 64;

inline StateSet singleton(StateId q) { return StateSet{1} << q; }
inline bool contains(StateSet s, StateId q) { return (s >> q) & 1U; }
inline bool is_subset(StateSet a, StateSet b) { return (a & ~b) == 0; }
inline int popcount(StateSet s) { return std::popcount(s); }

enum class ErrorKind {
  Parse,
  Validation,
  CapExceeded,
  AnchorUnreachable,
  NotDerivable,
  MalformedName,
  UnsupportedSpec,
  NoPeriodicClosure,
  SkipBudgetExhausted,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Top-of-store symbol: Z is the bottom marker Z0 (counter zero), I is a counter unit.
enum class Level : std::uint8_t { Z, I };

struct Transition {
  StateId target = 0;
  int delta = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Configuration {
  StateId state = 0;
  Counter counter = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Deterministic realtime blind one-counter machine with a Muller family.
///
/// Counter contents I^n Z0 are stored as the integer n. The zero-level
/// table may be sparser than the nonzero-level table, but wherever a
/// zero-level entry exists the nonzero-level entry is identical.
class Mbca {
 public:
  Mbca() = default;

  const std::string& name() const { return name_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  StateId initial() const { return initial_; }
  const std::set<StateSet>& accept_family() const { return accept_; }
  bool accepts_set(StateSet s) const { return accept_.count(s) != 0; }

  const std::optional<Transition>& entry(StateId q, LetterId a, Level lv) const {
    return (lv == Level::Z ? zero_ : nonzero_)[index(q, a)];
  }

  /// The entry used from counter value c.
  const std::optional<Transition>& entry_at(StateId q, LetterId a, Counter c) const {
    return entry(q, a, c == 0 ? Level::Z : Level::I);
  }

  std::optional<StateId> find_state(std::string_view s) const;
  std::optional<LetterId> find_letter(std::string_view s) const;

  /// Largest positive delta in the table (0 when none).
  int max_increment() const;
  int max_abs_delta() const;

  std::string format_set(StateSet s) const;

  friend class MbcaBuilder;

 private:
  std::size_t index(StateId q, LetterId a) const { return q * alphabet_.size() + a; }

  std::string name_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  StateId initial_ = 0;
  std::vector<std::optional<Transition>> zero_;
  std::vector<std::optional<Transition>> nonzero_;
  std::set<StateSet> accept_;
};

struct Violation {
  enum class Rule { BlindnessViolation, DeltaOutOfRange, NondeterministicEntry, DanglingReference };
  Rule rule;
  std::string state;
  std::string letter;
  std::optional<Level> level;
  std::string detail;
};

std::string_view to_string(Violation::Rule r);
std::string_view to_string(Level lv);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Unvalidated machine description, as read from text or assembled by code.
struct MbcaCandidate {
  struct Entry {
    std::string state;
    std::string letter;
    Level level = Level::Z;
    std::string target;
    int delta = 0;
  };
  std::string name = "unnamed";
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::vector<std::string>> accept;
  std::vector<Entry> transitions;

  /// Adds identical Z and I entries.
  void both(const std::string& q, const std::string& a, const std::string& p, int delta);
  /// Adds only the nonzero-level entry.
  void nonzero(const std::string& q, const std::string& a, const std::string& p, int delta);
};

/// Checks every table invariant; the machine is built only when the report is clean.
struct ValidationResult {
  std::optional<Mbca> machine;
  ValidationReport report;
};
ValidationResult validate(const MbcaCandidate& raw);

/// validate() that throws Error(Validation) on a dirty report.
Mbca build(const MbcaCandidate& raw);

MbcaCandidate parse_mbca(std::string_view text);
std::string format_mbca(const Mbca& m);
MbcaCandidate to_candidate(const Mbca& m);

/// One step of the machine; nullopt when the run blocks.
std::optional<Configuration> step(const Mbca& m, Configuration c, LetterId a);

/// Copy of m whose transitions stay inside `keep`: entries from or into other states are
/// dropped and only accepted sets contained in `keep` survive. State ids are preserved, so
/// dropped states remain as isolated, unreachable states.
Mbca restrict_to(const Mbca& m, StateSet keep, const std::string& name);

}  // namespace mbca
