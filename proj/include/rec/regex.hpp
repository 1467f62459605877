// Regular expressions and their transcription into REC.
//
// Text grammar ('%' = empty set, '^' = empty word, '[' ']' group):
//   union  ::= concat ('|' concat)*
//   concat ::= rep+
//   rep    ::= atom '*'*
//   atom   ::= letter | '%' | '^' | '[' union ']'
//
// Transcription:  Φ -> ()     λ -> λ      σ -> σ      αβ -> αβ
//                 α1∪…∪αn -> (∘α1;α2;…;αn;)          α* -> (∘α:;)
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rec/automata.hpp"
#include "rec/syntax.hpp"

namespace rec::rx {

struct Phi {
  bool operator==(const Phi&) const = default;
};
struct Lambda {
  bool operator==(const Lambda&) const = default;
};
struct Sym {
  char letter = 0;
  bool operator==(const Sym&) const = default;
};
struct Concat;
struct Union;
struct Star;

using Regex = std::variant<Phi, Lambda, Sym, Concat, Union, Star>;

struct Concat {
  std::vector<Regex> parts;  // >= 2, no nested Concat directly
  bool operator==(const Concat&) const = default;
};
struct Union {
  std::vector<Regex> parts;  // >= 2, no nested Union directly
  bool operator==(const Union&) const = default;
};
struct Star {
  Star() = default;
  explicit Star(Regex r);
  std::shared_ptr<const Regex> inner;  // immutable, shared on copy
  const Regex& body() const { return *inner; }
  bool operator==(const Star& o) const;
};

// Construction helpers; cat/alt flatten nested same-kind nodes and collapse
// singletons so the >= 2 parts invariant holds.
Regex phi();
Regex lam();
Regex sym(char c);
Regex cat(std::vector<Regex> parts);
Regex alt(std::vector<Regex> parts);
Regex star(Regex inner);

Regex parse_regex(std::string_view text);

// REC transcription of the regex (as a top-level item sequence).
RecExpr regex_to_rec(const Regex& r);

// Independent textbook construction; the oracle the REC construction is
// checked against.
Nfa thompson_nfa(const Regex& r);

std::string to_string(const Regex& r);

}  // namespace rec::rx
