#include "rec/generate.hpp"

namespace rec::gen {

namespace {

// rng() % n is deterministic across platforms (mt19937_64 is pinned by the
// standard; distributions are not, so they stay out of this file).
std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

char pick_char(std::mt19937_64& rng, std::string_view s) {
  return s[pick(rng, s.size())];
}

char pick_member(std::mt19937_64& rng, const std::set<char>& s) {
  std::size_t i = pick(rng, s.size());
  auto it = s.begin();
  std::advance(it, i);
  return *it;
}

RecItem random_item(std::mt19937_64& rng, const SymbolTable& table, const ExprOptions& opt,
                    int depth);

RecExpr random_items(std::mt19937_64& rng, const SymbolTable& table, const ExprOptions& opt,
                     int depth) {
  RecExpr e;
  std::size_t n = pick(rng, static_cast<std::size_t>(opt.max_items) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    e.items.push_back(random_item(rng, table, opt, depth));
  }
  return e;
}

RecItem random_item(std::mt19937_64& rng, const SymbolTable& table, const ExprOptions& opt,
                    int depth) {
  const auto& cops = table.members(SymbolClass::CompoundOperator);
  const auto& cpreds = table.members(SymbolClass::CompoundPredicate);
  for (;;) {
    switch (pick(rng, 10)) {
      case 0:
      case 1:
      case 2:
        return Symbol{pick_char(rng, opt.letters), std::nullopt};
      case 3:
        if (!cpreds.empty()) {
          return Symbol{pick_member(rng, cpreds), pick_char(rng, opt.params)};
        }
        break;
      case 4:
        if (!cops.empty()) {
          return Symbol{pick_member(rng, cops), pick_char(rng, opt.params)};
        }
        break;
      case 5:
        if (opt.signs) return Colon{};
        break;
      case 6:
        if (opt.signs) return Semicolon{};
        break;
      case 7:
        if (opt.signs) return Period{};
        break;
      case 8:
        if (opt.signs) return Lambda{};
        break;
      case 9:
        if (depth > 0) {
          return Group{random_items(rng, table, opt, depth - 1)};
        }
        break;
    }
  }
}

}  // namespace

RecExpr random_expr(std::mt19937_64& rng, const SymbolTable& table, const ExprOptions& opt) {
  return random_items(rng, table, opt, opt.max_depth);
}

SymbolTable corpus_table() {
  SymbolTable t;
  t.add(SymbolClass::Operator, 'M');
  t.add(SymbolClass::Operator, 'N');
  t.add(SymbolClass::Predicate, 'P');
  t.add(SymbolClass::Predicate, 'Q');
  t.add(SymbolClass::CompoundPredicate, '=');
  t.add(SymbolClass::CompoundOperator, '"');
  return t;
}

RecExpr random_program(std::mt19937_64& rng, const SymbolTable& table, int max_depth,
                       int max_items) {
  ExprOptions opt;
  opt.max_depth = max_depth;
  opt.max_items = max_items;
  opt.letters.clear();
  for (char c : table.members(SymbolClass::Operator)) opt.letters += c;
  for (char c : table.members(SymbolClass::Predicate)) opt.letters += c;
  if (opt.letters.empty()) opt.letters = "X";
  opt.params = "abc";
  RecExpr program;
  program.items.emplace_back(Group{random_items(rng, table, opt, max_depth)});
  return program;
}

rx::Regex random_regex(std::mt19937_64& rng, int max_depth, std::string_view alphabet) {
  if (max_depth <= 0) {
    switch (pick(rng, 6)) {
      case 0: return rx::lam();
      case 1: return rx::phi();
      default: return rx::sym(pick_char(rng, alphabet));
    }
  }
  switch (pick(rng, 8)) {
    case 0: return rx::lam();
    case 1: return rx::phi();
    case 2:
    case 3: return rx::sym(pick_char(rng, alphabet));
    case 4: return rx::star(random_regex(rng, max_depth - 1, alphabet));
    case 5: {
      std::vector<rx::Regex> parts;
      std::size_t n = 2 + pick(rng, 2);
      for (std::size_t i = 0; i < n; ++i) {
        parts.push_back(random_regex(rng, max_depth - 1, alphabet));
      }
      return rx::alt(std::move(parts));
    }
    default: {
      std::vector<rx::Regex> parts;
      std::size_t n = 2 + pick(rng, 2);
      for (std::size_t i = 0; i < n; ++i) {
        parts.push_back(random_regex(rng, max_depth - 1, alphabet));
      }
      return rx::cat(std::move(parts));
    }
  }
}

}  // namespace rec::gen
