// Symbolic machine for compiled programs. Items are machine words; external
// subroutines (the alphabet's letters) are modeled by the Env: an operator
// call performs its effect and resumes after its parameter words; a predicate
// resumes there on FALSE and one word later on TRUE (the hardware skip);
// compound operators always skip. JMS/ISZ/JMP I through the entry cell model
// the calling convention; the synthetic caller observes FALSE or TRUE by
// which return address comes back.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rec/codegen.hpp"
#include "rec/syntax.hpp"
#include "rec/vm.hpp"

namespace rec::pdp {

struct EmulateResult {
  bool truth = false;
  Trace trace;
};

// Runs a wrapped program from its entry subroutine. A step is one executed
// instruction (labels and entry cells are locations, not instructions).
EmulateResult emulate(const Program& p, const SymbolTable& table, Env& env,
                      std::uint64_t budget = kDefaultBudget);

struct DiffResult {
  bool equal = false;
  std::string detail;  // human-readable mismatch description
};

// Runs the interpreter and the compiled emulation of `program` against
// identical fresh environments and compares truth value, executed-symbol
// sequence, and observable output. `input` selects a teletype environment;
// without it predicates draw from a ScriptedEnv stream seeded with `seed`.
// Matching error outcomes (both sides exceeding the budget, both exhausting
// input, ...) count as equal.
DiffResult differential_check(const RecExpr& program, const SymbolTable& table,
                              std::uint64_t seed, std::optional<std::string> input,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace rec::pdp
