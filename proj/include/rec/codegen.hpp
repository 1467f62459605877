// Compilation of REC programs into subroutine-call assembly.
//
// Calling convention: JMS Y deposits the return address X+1 in cell Y and
// transfers to Y+1; JMP I Y returns through the cell. A predicate signals
// FALSE by returning to X+1 (the JMP that follows the call) and TRUE by
// first incrementing the cell (ISZ) and returning to X+2, skipping it.
// Parameter words after a call are stepped over the same way.
//
// Per group: bind fresh labels HE (head) and TR (true exit), take OF (the
// enclosing false exit; the reserved label FA at top level), allocate a fresh
// false-exit label per segment:
//   operator            Call
//   compound / predicate Call [ParamWord] Jump(false-exit)
//   ':'                 Jump(HE), place false-exit label, fresh one
//   ';'                 Jump(TR), place false-exit label, fresh one
//   '∘'                 Jump(false-exit)
//   λ                   nothing
//   nested group        recurse with OF = the current false-exit
//   end of body         Jump(OF), place false-exit label
// then place TR. wrap_subroutine adds the entry cell, the TRUE return
// (ISZ entry; JMP I entry) after TR, and binds FA to a plain JMP I entry.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rec/syntax.hpp"
#include "rec/vm.hpp"

namespace rec::pdp {

struct Label {
  std::string name;
  bool operator==(const Label&) const = default;
};
struct Call {
  std::string name;
  bool operator==(const Call&) const = default;
};
struct ParamWord {
  char value = 0;
  bool operator==(const ParamWord&) const = default;
};
struct Jump {
  std::string target;
  bool operator==(const Jump&) const = default;
};
struct EntryCell {
  std::string name;
  bool operator==(const EntryCell&) const = default;
};
struct IncrementSkip {
  std::string cell;
  bool operator==(const IncrementSkip&) const = default;
};
struct IndirectJump {
  std::string cell;
  bool operator==(const IndirectJump&) const = default;
};

using AsmItem =
    std::variant<Label, Call, ParamWord, Jump, EntryCell, IncrementSkip, IndirectJump>;

struct Program {
  std::vector<AsmItem> items;
  std::string entry;  // empty until wrap_subroutine
  bool operator==(const Program&) const = default;
};

// The top-level false exit every compiled body jumps to; defined by
// wrap_subroutine.
inline constexpr const char* kFalseExit = "FA";

// External subroutine names: '=' -> EQ, '"' -> QU, otherwise the letter.
std::string subroutine_name(char letter);
std::optional<char> letter_for_name(const std::string& name);

// Compiles a program (single top-level group) into an unwrapped body.
// Label gensyms are G0001, G0002, ... in allocation order.
Program compile(const RecExpr& program, const SymbolTable& table);

// Completes a body into a callable subroutine. Rejects names that collide
// with gensyms or the reserved FA label.
Program wrap_subroutine(Program body, const std::string& name);

// Listing format: `NAME,` labels, `NAME,<TAB>0` entry cells, and tab-indented
// `JMS NAME`, `JMP NAME`, `JMP I NAME`, `ISZ NAME`, or a bare parameter
// character. parse_asm inverts emit_text exactly.
std::string emit_text(const Program& p);
Program parse_asm(std::string_view text);

}  // namespace rec::pdp
