// Seeded random generators for test corpora. Everything here is driven by a
// caller-owned std::mt19937_64, so a fixed seed reproduces a corpus exactly.
#pragma once

#include <random>
#include <string>

#include "rec/regex.hpp"
#include "rec/syntax.hpp"

namespace rec::gen {

struct ExprOptions {
  int max_depth = 5;
  int max_items = 6;
  std::string letters = "ABXYZ";      // plain letters to draw from
  std::string params = "a! =:)";      // compound parameters (deliberately nasty)
  bool signs = true;                  // allow ':' ';' '∘' λ
};

// Arbitrary well-formed expression (round-trip and construction tests);
// compound letters come from the table's compound classes.
RecExpr random_expr(std::mt19937_64& rng, const SymbolTable& table,
                    const ExprOptions& opt = {});

// Executable program: a single top-level group over the table's classified
// letters (differential and trace corpora).
RecExpr random_program(std::mt19937_64& rng, const SymbolTable& table,
                       int max_depth = 3, int max_items = 6);

// Regex over `alphabet` with nesting depth at most max_depth.
rx::Regex random_regex(std::mt19937_64& rng, int max_depth = 4,
                       std::string_view alphabet = "ab");

// The symbol table the generated-program corpora use: operators M N,
// predicates P Q, compound predicate =, compound operator ".
SymbolTable corpus_table();

}  // namespace rec::gen
