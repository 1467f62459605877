#include "rec/regex.hpp"

#include <cctype>

namespace rec::rx {

Star::Star(Regex r) : inner(std::make_shared<const Regex>(std::move(r))) {}

bool Star::operator==(const Star& o) const {
  if (inner == o.inner) return true;
  if (!inner || !o.inner) return false;
  return *inner == *o.inner;
}

Regex phi() { return Phi{}; }
Regex lam() { return Lambda{}; }
Regex sym(char c) { return Sym{c}; }

Regex cat(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (Regex& p : parts) {
    if (Concat* c = std::get_if<Concat>(&p)) {
      for (Regex& q : c->parts) flat.push_back(std::move(q));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return std::move(flat[0]);
  return Concat{std::move(flat)};
}

Regex alt(std::vector<Regex> parts) {
  std::vector<Regex> flat;
  for (Regex& p : parts) {
    if (Union* u = std::get_if<Union>(&p)) {
      for (Regex& q : u->parts) flat.push_back(std::move(q));
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return std::move(flat[0]);
  return Union{std::move(flat)};
}

Regex star(Regex inner) { return Star{std::move(inner)}; }

// ---------------------------------------------------------------------------
// Parser.

namespace {

struct RxParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return text[pos];
  }

  Regex parse_union() {
    std::vector<Regex> parts;
    parts.push_back(parse_concat());
    while (!eof() && peek() == '|') {
      ++pos;
      parts.push_back(parse_concat());
    }
    return alt(std::move(parts));
  }

  Regex parse_concat() {
    std::vector<Regex> parts;
    while (!eof()) {
      char c = peek();
      if (c == '|' || c == ']') break;
      parts.push_back(parse_rep());
    }
    if (parts.empty()) {
      throw ParseError(ParseErrorKind::EmptyOperand, "empty operand", pos);
    }
    return cat(std::move(parts));
  }

  Regex parse_rep() {
    Regex r = parse_atom();
    while (!eof() && peek() == '*') {
      ++pos;
      r = star(std::move(r));
    }
    return r;
  }

  Regex parse_atom() {
    if (eof()) {
      throw ParseError(ParseErrorKind::EmptyOperand, "expected an operand", pos);
    }
    char c = peek();
    std::size_t at = pos;
    switch (c) {
      case '%': ++pos; return phi();
      case '^': ++pos; return lam();
      case '[': {
        ++pos;
        Regex r = parse_union();
        if (eof() || peek() != ']') {
          throw ParseError(ParseErrorKind::UnbalancedBrackets, "unclosed '['", at);
        }
        ++pos;
        return r;
      }
      case ']':
        throw ParseError(ParseErrorKind::UnbalancedBrackets, "unmatched ']'", at);
      case '*':
        throw ParseError(ParseErrorKind::EmptyOperand, "'*' without an operand", at);
      case '|':
        throw ParseError(ParseErrorKind::EmptyOperand, "empty union arm", at);
      default:
        ++pos;
        return sym(c);
    }
  }
};

}  // namespace

Regex parse_regex(std::string_view text) {
  RxParser p{text, 0};
  Regex r = p.parse_union();
  if (!p.eof()) {
    throw ParseError(ParseErrorKind::UnbalancedBrackets, "trailing input", p.pos);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transcription to REC.

namespace {

void transcribe(const Regex& r, std::vector<RecItem>& out);

void transcribe_into_group(const std::vector<Regex>& alternatives, std::vector<RecItem>& out) {
  Group g;
  g.body.items.emplace_back(rec::Period{});
  for (const Regex& a : alternatives) {
    transcribe(a, g.body.items);
    g.body.items.emplace_back(rec::Semicolon{});
  }
  out.emplace_back(std::move(g));
}

void transcribe(const Regex& r, std::vector<RecItem>& out) {
  struct V {
    std::vector<RecItem>& out;
    // `()` denotes ∅ only where nothing follows it: a failed group otherwise
    // escapes by skipping the next same-level delimiter (or exits TRUE). The
    // compositional empty language is `(:)`, whose interior never reaches a
    // continuation state; regex_to_rec keeps the classical `()` for a Phi
    // that is the whole expression.
    void operator()(const Phi&) { out.emplace_back(Group{RecExpr{{Colon{}}}}); }
    void operator()(const Lambda&) { out.emplace_back(rec::Lambda{}); }
    void operator()(const Sym& s) { out.emplace_back(rec::Symbol{s.letter, std::nullopt}); }
    void operator()(const Concat& c) {
      for (const Regex& p : c.parts) transcribe(p, out);
    }
    void operator()(const Union& u) { transcribe_into_group(u.parts, out); }
    void operator()(const Star& s) {
      Group g;
      g.body.items.emplace_back(rec::Period{});
      transcribe(s.body(), g.body.items);
      g.body.items.emplace_back(rec::Colon{});
      g.body.items.emplace_back(rec::Semicolon{});
      out.emplace_back(std::move(g));
    }
  };
  std::visit(V{out}, r);
}

}  // namespace

RecExpr regex_to_rec(const Regex& r) {
  if (std::holds_alternative<Phi>(r)) {
    return RecExpr{{Group{}}};  // the table form; sound with no continuation
  }
  RecExpr e;
  transcribe(r, e.items);
  return e;
}

// ---------------------------------------------------------------------------
// Thompson construction (the oracle).

namespace {

struct Frag {
  StateId start;
  StateId accept;
};

struct Thompson {
  Nfa nfa;

  StateId fresh() { return nfa.state_count++; }
  void edge(StateId a, std::optional<char> label, StateId b) {
    nfa.edges.push_back({a, label, b});
  }

  Frag build(const Regex& r) {
    struct V {
      Thompson& t;
      Frag operator()(const Phi&) {
        Frag f{t.fresh(), t.fresh()};
        return f;  // no path
      }
      Frag operator()(const Lambda&) {
        Frag f{t.fresh(), t.fresh()};
        t.edge(f.start, std::nullopt, f.accept);
        return f;
      }
      Frag operator()(const Sym& s) {
        Frag f{t.fresh(), t.fresh()};
        t.edge(f.start, s.letter, f.accept);
        t.nfa.alphabet.insert(s.letter);
        return f;
      }
      Frag operator()(const Concat& c) {
        Frag whole{-1, -1};
        for (const Regex& p : c.parts) {
          Frag f = t.build(p);
          if (whole.start < 0) {
            whole = f;
          } else {
            t.edge(whole.accept, std::nullopt, f.start);
            whole.accept = f.accept;
          }
        }
        return whole;
      }
      Frag operator()(const Union& u) {
        Frag whole{t.fresh(), t.fresh()};
        for (const Regex& p : u.parts) {
          Frag f = t.build(p);
          t.edge(whole.start, std::nullopt, f.start);
          t.edge(f.accept, std::nullopt, whole.accept);
        }
        return whole;
      }
      Frag operator()(const Star& s) {
        Frag inner = t.build(s.body());
        Frag whole{t.fresh(), t.fresh()};
        t.edge(whole.start, std::nullopt, whole.accept);
        t.edge(whole.start, std::nullopt, inner.start);
        t.edge(inner.accept, std::nullopt, whole.accept);
        t.edge(inner.accept, std::nullopt, inner.start);
        return whole;
      }
    };
    return std::visit(V{*this}, r);
  }
};

}  // namespace

Nfa thompson_nfa(const Regex& r) {
  Thompson t;
  Frag f = t.build(r);
  t.nfa.initial = f.start;
  t.nfa.accepting = {f.accept};
  return t.nfa;
}

// ---------------------------------------------------------------------------
// Printing (diagnostics).

namespace {

int precedence(const Regex& r) {
  if (std::holds_alternative<Union>(r)) return 0;
  if (std::holds_alternative<Concat>(r)) return 1;
  return 2;
}

void print(const Regex& r, std::string& out, int min_prec) {
  bool wrap = precedence(r) < min_prec;
  if (wrap) out += '[';
  struct V {
    std::string& out;
    void operator()(const Phi&) { out += '%'; }
    void operator()(const Lambda&) { out += '^'; }
    void operator()(const Sym& s) { out += s.letter; }
    void operator()(const Concat& c) {
      for (const Regex& p : c.parts) print(p, out, 2);
    }
    void operator()(const Union& u) {
      bool first = true;
      for (const Regex& p : u.parts) {
        if (!first) out += '|';
        first = false;
        print(p, out, 1);
      }
    }
    void operator()(const Star& s) {
      print(s.body(), out, 2);  // postfix '*' needs brackets around unions/concats only
      out += '*';
    }
  };
  std::visit(V{out}, r);
  if (wrap) out += ']';
}

}  // namespace

std::string to_string(const Regex& r) {
  std::string out;
  print(r, out, 0);
  return out;
}

}  // namespace rec::rx
