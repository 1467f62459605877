// Deterministic execution of REC expressions against a pluggable environment.
//
// Control rules inside a group body:
//   - operators perform their effect and control continues;
//   - a false predicate skips past the next same-level ':' or ';'; if none
//     follows, the group itself returns TRUE;
//   - ';' exits the group TRUE; ':' restarts the body from the beginning;
//   - '∘' is an effect-free always-false predicate; λ does nothing;
//   - a nested group runs as a predicate (its own truth value);
//   - falling off the end of the body returns FALSE.
// Consequently `(x)` is NOT x, `(ab;)` is AND, `(a;b;)` is OR, `(;)` is the
// true predicate and `()` the false one.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rec/syntax.hpp"

namespace rec {

enum class RunErrorKind {
  StepBudgetExceeded,
  InputExhausted,
  EmptyWorkspace,
  UnboundSymbol,
  UndefinedLabel,
  NotAProgram,
  NameCollision,
  MalformedProgram,
};

class RunError : public std::runtime_error {
 public:
  RunError(RunErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  RunErrorKind kind() const { return kind_; }

 private:
  RunErrorKind kind_;
};

struct TraceEvent {
  enum class Kind { SymbolExecuted, GroupEntered, GroupExited, Looped };
  Kind kind = Kind::SymbolExecuted;
  char letter = 0;              // SymbolExecuted only
  std::optional<char> param;    // SymbolExecuted of a compound
  std::optional<bool> outcome;  // predicate outcome / GroupExited truth
  bool operator==(const TraceEvent&) const = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  std::uint64_t steps = 0;

  std::string to_string() const;                   // byte-stable serialization
  std::vector<TraceEvent> symbol_events() const;   // SymbolExecuted only
  std::vector<char> executed_letters() const;      // their letters, in order
};

// Behavior bindings for the alphabet. perform() runs an operator's effect;
// test() runs a predicate and reports its outcome. Unknown letters raise
// UnboundSymbol.
class Env {
 public:
  virtual ~Env() = default;
  virtual void perform(char letter, std::optional<char> param) = 0;
  virtual bool test(char letter, std::optional<char> param) = 0;
  // Environment-specific observable output (teletype output string, etc.).
  virtual std::string observable() const { return {}; }
};

// Single-character-workspace teletype: R reads input into the workspace,
// W appends the workspace to the output, "x sets the workspace to x, and
// =x tests the workspace against x.
class TeletypeEnv : public Env {
 public:
  explicit TeletypeEnv(std::string input) : input_(std::move(input)) {}

  void perform(char letter, std::optional<char> param) override;
  bool test(char letter, std::optional<char> param) override;
  std::string observable() const override { return output_; }

  const std::string& output() const { return output_; }
  const std::optional<char>& workspace() const { return workspace_; }

 private:
  std::string input_;
  std::size_t cursor_ = 0;
  std::optional<char> workspace_;
  std::string output_;
};

inline TeletypeEnv make_teletype_env(std::string input) {
  return TeletypeEnv(std::move(input));
}

// Effect-free environment for tests: records every executed symbol and
// answers predicates either from a fixed truth assignment or from a seeded
// deterministic stream.
class ScriptedEnv : public Env {
 public:
  static ScriptedEnv with_assignment(std::map<char, bool> truth);
  static ScriptedEnv with_seed(std::uint64_t seed);

  void perform(char letter, std::optional<char> param) override;
  bool test(char letter, std::optional<char> param) override;

  const std::vector<TraceEvent>& log() const { return log_; }

 private:
  ScriptedEnv() = default;
  bool seeded_ = false;
  std::map<char, bool> truth_;
  std::mt19937_64 rng_;
  std::vector<TraceEvent> log_;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct RunResult {
  bool truth = false;
  Trace trace;
};

// Executes a program (a single top-level group). A step is one item visit;
// exceeding the budget raises StepBudgetExceeded.
RunResult run(const RecExpr& program, const SymbolTable& table, Env& env,
              std::uint64_t budget = kDefaultBudget);

// Truth table of a predicate form: row index bit i carries the assignment of
// letters[i]; each row runs the program under that fixed assignment.
std::vector<bool> truth_table(const RecExpr& program, const SymbolTable& table,
                              const std::vector<char>& letters,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace rec
