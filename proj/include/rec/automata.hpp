// Transition systems for REC expressions.
//
// Construction rules, per expression level (a level = one parenthesis depth):
//   - every level has an initial state I and a terminal state T, plus a
//     running "last" state (starts at I);
//   - λ: spontaneous edge last -> fresh; the fresh state becomes last;
//   - a letter: letter-labeled edge last -> fresh; fresh becomes last;
//   - ':': spontaneous edge last -> I, then a fresh state resolves pending
//     skip edges and becomes last;
//   - ';': spontaneous edge last -> T, likewise;
//   - '∘': registers a pending skip edge from last (no state is created);
//   - a group: spontaneous edge last -> interior I; the interior is built
//     recursively; its final last state registers a pending skip edge at the
//     OUTER level (a group acts as though followed by '∘'); the interior T
//     becomes the outer last;
//   - predicate-classified letters behave as the letter followed by '∘'.
//
// A pending source resolves at every later same-level ':' or ';' (an ε edge
// to the fresh state each delimiter creates), EXCEPT that a repeat resolution
// is not drawn at the level's final delimiter: the segment after the last
// delimiter is reachable by a first skip but not by a chained one. (Without
// the exception, a group's fall-off tail becomes spuriously reachable and
// leaks a failure path to the enclosing level — `(.b:;)x` would wrongly admit
// words that enter the star and then escape to `x`.) A source that never
// meets a delimiter resolves to the level's T. The accepting state is the
// final top-level last state — so `()` denotes the empty language.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rec/syntax.hpp"

namespace rec {

using StateId = int;

struct NfaEdge {
  StateId from = 0;
  std::optional<char> label;  // nullopt = spontaneous (ε)
  StateId to = 0;
  bool operator==(const NfaEdge&) const = default;
};

struct Nfa {
  int state_count = 0;
  std::set<char> alphabet;
  std::vector<NfaEdge> edges;
  StateId initial = 0;
  std::set<StateId> accepting;
};

// Construction by-products that tests and the trace checker need.
struct NfaBuild {
  Nfa nfa;
  StateId top_terminal = -1;        // T of the whole expression
  StateId top_group_terminal = -1;  // interior T when the expression is one group
  int registrations = 0;            // pending-edge registrations (rule-7 count)
};

NfaBuild rec_to_nfa_build(const RecExpr& expr, const SymbolTable& table);
Nfa rec_to_nfa(const RecExpr& expr, const SymbolTable& table);

std::set<StateId> epsilon_closure(const Nfa& n, const std::set<StateId>& from);

struct Dfa {
  int state_count = 0;
  std::vector<char> alphabet;
  std::vector<std::vector<StateId>> next;  // [state][alphabet index]; total
  StateId initial = 0;
  std::vector<bool> accepting;
};

Dfa determinize(const Nfa& n);
Dfa determinize(const Nfa& n, const std::set<char>& alphabet);

bool dfa_accepts(const Dfa& d, std::string_view word);
bool nfa_accepts(const Nfa& n, std::string_view word);
// Membership with a caller-chosen accepting set (e.g. the top group's interior T).
bool nfa_accepts_at(const Nfa& n, std::string_view word, const std::set<StateId>& accept);

bool language_equiv(const Nfa& a, const Nfa& b);

// GraphViz rendering of the reachable part (diagram duty only).
std::string to_dot(const Nfa& n);
// Full machine-readable export; stable field names.
std::string nfa_json(const Nfa& n);

}  // namespace rec
