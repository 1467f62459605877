// REC expression syntax: items, symbol tables, the native and CTSS parsers,
// and the canonical printer.
//
// Grammar of a REC expression (concatenation binds everything):
//
//   expr  ::= item*
//   item  ::= 'λ' | '(' expr ')' | sign | symbol
//   sign  ::= ':' | ';' | '∘'
//   symbol::= letter [param]        -- param iff the table declares the letter compound
//
// Native orthography: '(' ')' ':' ';' are themselves; '.' is the ASCII alias
// for '∘' and '\l' for 'λ'; whitespace is ignored EXCEPT immediately after a
// compound symbol, where the very next character (even a space) is read
// verbatim as its parameter.
#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rec {

enum class ParseErrorKind {
  UnbalancedParens,
  DanglingCompound,
  ReservedLetter,
  DuplicateLetter,
  UnknownToken,
  UnbalancedBrackets,
  EmptyOperand,
  BadListing,
};

class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(ParseErrorKind kind, const std::string& msg, std::size_t pos = npos)
      : std::runtime_error(msg), kind_(kind), pos_(pos) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return pos_; }

 private:
  ParseErrorKind kind_;
  std::size_t pos_;
};

enum class SymbolClass { Operator, Predicate, CompoundOperator, CompoundPredicate };

// Classifies the letters of the working alphabet. The four sets are pairwise
// disjoint; letters not listed anywhere act as plain operators.
class SymbolTable {
 public:
  SymbolTable() = default;

  // R, W operators; Q predicate; = compound predicate; " compound operator.
  static SymbolTable defaults();
  // Line-oriented format, e.g.:
  //   operators: R W
  //   predicates: Q
  //   compound_predicates: =
  //   compound_operators: "
  static SymbolTable from_text(std::string_view text);
  static SymbolTable from_file(const std::string& path);

  void add(SymbolClass cls, char letter);
  SymbolClass classify(char letter) const;
  bool is_compound(char letter) const;
  bool is_predicate(char letter) const;  // Predicate or CompoundPredicate
  const std::set<char>& members(SymbolClass cls) const;

 private:
  std::set<char> sets_[4];
};

struct Lambda {
  bool operator==(const Lambda&) const = default;
};
struct Colon {
  bool operator==(const Colon&) const = default;
};
struct Semicolon {
  bool operator==(const Semicolon&) const = default;
};
struct Period {  // the large period '∘'
  bool operator==(const Period&) const = default;
};
struct Symbol {
  char letter = 0;
  std::optional<char> param;  // present iff the letter is compound
  bool operator==(const Symbol&) const = default;
};
struct Group;

using RecItem = std::variant<Lambda, Colon, Semicolon, Period, Symbol, Group>;

struct RecExpr {
  std::vector<RecItem> items;
  bool operator==(const RecExpr&) const = default;
};

struct Group {
  RecExpr body;
  bool operator==(const Group&) const = default;
};

// Native orthography.
RecExpr parse(std::string_view text, const SymbolTable& table);

// CTSS orthography: a parenthesized token list. SC=';', CO=':', PD='∘';
// (EQ x) and (QU x) are compound calls; bare single-character tokens are
// letters; other sub-lists are nested groups. Tokens are case-insensitive
// and letters are uppercased.
RecExpr parse_ctss(std::string_view text, const SymbolTable& table);

enum class Orthography { Ascii, Unicode };

std::string pretty_print(const RecExpr& expr, Orthography orth = Orthography::Ascii);
std::string pretty_print(const RecItem& item, Orthography orth = Orthography::Ascii);

}  // namespace rec
