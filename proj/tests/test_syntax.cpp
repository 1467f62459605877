#include <random>
#include <vector>

#include "doctest.h"
#include "rec/generate.hpp"
#include "rec/syntax.hpp"

using namespace rec;

namespace {

RecExpr body_of(const RecExpr& program) {
  REQUIRE(program.items.size() == 1);
  return std::get<Group>(program.items[0]).body;
}

RecExpr items(std::vector<RecItem> v) { return RecExpr{std::move(v)}; }

}  // namespace

TEST_CASE("native: copy with double spacing, item by item") {
  SymbolTable t = SymbolTable::defaults();
  RecExpr e = parse("(R=!;W\" W:)", t);
  CHECK(body_of(e) == items({
                          Symbol{'R', std::nullopt},
                          Symbol{'=', '!'},
                          Semicolon{},
                          Symbol{'W', std::nullopt},
                          Symbol{'"', ' '},  // the quoted blank
                          Symbol{'W', std::nullopt},
                          Colon{},
                      }));
}

TEST_CASE("native: whitespace is skipped except in parameter position") {
  SymbolTable t = SymbolTable::defaults();
  RecExpr spaced = parse("  ( R W\n\t: )  ", t);
  CHECK(spaced == parse("(RW:)", t));
  // Immediately after '=', the space IS the parameter and '!' stands alone.
  RecExpr e = parse("(= !;)", t);
  CHECK(body_of(e) == items({Symbol{'=', ' '}, Symbol{'!', std::nullopt}, Semicolon{}}));
}

TEST_CASE("native: sign aliases and the Unicode glyphs") {
  SymbolTable t = SymbolTable::defaults();
  RecExpr ascii = parse("(.\\l:;)", t);
  CHECK(body_of(ascii) == items({Period{}, Lambda{}, Colon{}, Semicolon{}}));
  CHECK(ascii == parse("(\xe2\x88\x98\xce\xbb:;)", t));  // (∘λ:;)
  // A backslash not followed by 'l' is an ordinary letter.
  RecExpr back = parse("\\x", t);
  CHECK(back == items({Symbol{'\\', std::nullopt}, Symbol{'x', std::nullopt}}));
}

TEST_CASE("native: nesting and the empty expression") {
  SymbolTable t = SymbolTable::defaults();
  CHECK(parse("", t).items.empty());
  RecExpr e = parse("((A))", t);
  CHECK(e == items({Group{items({Group{items({Symbol{'A', std::nullopt}})}})}}));
}

TEST_CASE("native: parse errors") {
  SymbolTable t = SymbolTable::defaults();
  CHECK_THROWS_AS(parse("(", t), ParseError);
  CHECK_THROWS_AS(parse(")", t), ParseError);
  CHECK_THROWS_AS(parse("(()", t), ParseError);
  CHECK_THROWS_AS(parse("(=", t), ParseError);  // compound at end of input
  try {
    parse("A)B", t);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::UnbalancedParens);
    CHECK(e.position() == 1);
  }
  try {
    parse("(=", t);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::DanglingCompound);
    CHECK(e.position() == 1);
  }
}

TEST_CASE("ctss: the published listing equals its native form") {
  SymbolTable t = SymbolTable::defaults();
  RecExpr ctss = parse_ctss("(r (eq =) co (eq :) sc w r q w r q w r q w)", t);
  RecExpr native = parse("(R==:=:;WRQWRQWRQW)", t);
  CHECK(ctss == native);
}

TEST_CASE("ctss: token forms") {
  SymbolTable t = SymbolTable::defaults();
  CHECK(parse_ctss("(sc)", t) == items({Group{items({Semicolon{}})}}));
  CHECK(parse_ctss("(co pd)", t) == items({Group{items({Colon{}, Period{}})}}));
  CHECK(parse_ctss("(SC)", t) == parse_ctss("(sc)", t));  // case-insensitive
  // A compound call list IS the symbol, not a group around it.
  CHECK(parse_ctss("(EQ x)", t) == items({Symbol{'=', 'X'}}));
  CHECK(parse_ctss("(qu a)", t) == items({Symbol{'"', 'A'}}));
  CHECK(parse_ctss("w", t) == items({Symbol{'W', std::nullopt}}));
  // A sub-list whose head is not a compound letter is a nested group.
  CHECK(parse_ctss("((a b))", t) ==
        items({Group{items({Group{items({Symbol{'A', std::nullopt}, Symbol{'B', std::nullopt}})}})}}));
}

TEST_CASE("ctss: errors") {
  SymbolTable t = SymbolTable::defaults();
  auto kind_of = [&](std::string_view text) {
    try {
      parse_ctss(text, t);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("expected ParseError for ", text);
    return ParseErrorKind::UnknownToken;
  };
  CHECK(kind_of("(eq)") == ParseErrorKind::DanglingCompound);
  CHECK(kind_of("eq") == ParseErrorKind::DanglingCompound);
  CHECK(kind_of("=") == ParseErrorKind::DanglingCompound);
  CHECK(kind_of(":") == ParseErrorKind::ReservedLetter);
  CHECK(kind_of("foo") == ParseErrorKind::UnknownToken);
  CHECK(kind_of("(eq toolong)") == ParseErrorKind::UnknownToken);
  CHECK(kind_of("(a b") == ParseErrorKind::UnbalancedParens);
  CHECK(kind_of(")") == ParseErrorKind::UnbalancedParens);
  // A three-token EQ list is not a compound call and 'eq' then dangles.
  CHECK(kind_of("(eq a b)") == ParseErrorKind::DanglingCompound);
}

TEST_CASE("symbol table: classification and defaults") {
  SymbolTable t = SymbolTable::defaults();
  CHECK(t.classify('R') == SymbolClass::Operator);
  CHECK(t.classify('Q') == SymbolClass::Predicate);
  CHECK(t.classify('=') == SymbolClass::CompoundPredicate);
  CHECK(t.classify('"') == SymbolClass::CompoundOperator);
  CHECK(t.classify('Z') == SymbolClass::Operator);  // unlisted letters act as operators
  CHECK(t.is_predicate('='));
  CHECK(t.is_compound('"'));
  CHECK_FALSE(t.is_predicate('R'));
}

TEST_CASE("symbol table: reserved and duplicate letters are rejected") {
  SymbolTable t;
  CHECK_THROWS_AS(t.add(SymbolClass::Operator, '('), ParseError);
  CHECK_THROWS_AS(t.add(SymbolClass::Operator, ';'), ParseError);
  CHECK_THROWS_AS(t.add(SymbolClass::Operator, '\\'), ParseError);
  CHECK_THROWS_AS(t.add(SymbolClass::Operator, static_cast<char>(0xC3)), ParseError);
  t.add(SymbolClass::Operator, 'X');
  t.add(SymbolClass::Operator, 'X');  // same class again is idempotent
  try {
    t.add(SymbolClass::Predicate, 'X');
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::DuplicateLetter);
  }
}

TEST_CASE("symbol table: text and file form") {
  SymbolTable t = SymbolTable::from_text(
      "# teletype alphabet\n"
      "operators: R W\n"
      "predicates: Q\n"
      "compound_predicates: =\n"
      "compound_operators: \"\n"
      "\n");
  CHECK(t.classify('W') == SymbolClass::Operator);
  CHECK(t.classify('=') == SymbolClass::CompoundPredicate);
  CHECK_THROWS_AS(SymbolTable::from_text("widgets: A"), ParseError);
  CHECK_THROWS_AS(SymbolTable::from_text("no colon here"), ParseError);
  CHECK_THROWS_AS(SymbolTable::from_file("/nonexistent/table"), ParseError);
}

TEST_CASE("printer: canonical forms") {
  SymbolTable t = SymbolTable::defaults();
  CHECK(pretty_print(parse("(R=!;W\" W:)", t)) == "(R=!;W\" W:)");
  CHECK(pretty_print(parse("( . \\l ; )", t)) == "(.\\l;)");
  CHECK(pretty_print(parse("(.\\l;)", t), Orthography::Unicode) ==
        "(\xe2\x88\x98\xce\xbb;)");
  CHECK(pretty_print(RecItem{Symbol{'=', ')'}}) == "=)");
}

TEST_CASE("printer: parse/print round-trips on a seeded corpus") {
  SymbolTable t = gen::corpus_table();
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    RecExpr e = gen::random_expr(rng, t);
    CHECK(parse(pretty_print(e, Orthography::Ascii), t) == e);
    CHECK(parse(pretty_print(e, Orthography::Unicode), t) == e);
  }
}
