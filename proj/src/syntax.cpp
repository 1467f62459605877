#include "rec/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rec {

namespace {

constexpr std::string_view kReserved = "():;.\\";

bool reserved_sign(char c) {
  return kReserved.find(c) != std::string_view::npos;
}

const char* class_name(SymbolClass cls) {
  switch (cls) {
    case SymbolClass::Operator: return "operators";
    case SymbolClass::Predicate: return "predicates";
    case SymbolClass::CompoundOperator: return "compound_operators";
    case SymbolClass::CompoundPredicate: return "compound_predicates";
  }
  return "?";
}

}  // namespace

SymbolTable SymbolTable::defaults() {
  SymbolTable t;
  t.add(SymbolClass::Operator, 'R');
  t.add(SymbolClass::Operator, 'W');
  t.add(SymbolClass::Predicate, 'Q');
  t.add(SymbolClass::CompoundPredicate, '=');
  t.add(SymbolClass::CompoundOperator, '"');
  return t;
}

void SymbolTable::add(SymbolClass cls, char letter) {
  if (reserved_sign(letter)) {
    throw ParseError(ParseErrorKind::ReservedLetter,
                     std::string("letter '") + letter + "' collides with an operational sign");
  }
  if (static_cast<unsigned char>(letter) >= 0x80) {
    throw ParseError(ParseErrorKind::ReservedLetter,
                     "letters must be single ASCII characters");
  }
  for (int i = 0; i < 4; ++i) {
    if (static_cast<int>(cls) != i && sets_[i].count(letter)) {
      throw ParseError(ParseErrorKind::DuplicateLetter,
                       std::string("letter '") + letter + "' already classified under " +
                           class_name(static_cast<SymbolClass>(i)));
    }
  }
  sets_[static_cast<int>(cls)].insert(letter);
}

SymbolClass SymbolTable::classify(char letter) const {
  for (int i = 0; i < 4; ++i) {
    if (sets_[i].count(letter)) return static_cast<SymbolClass>(i);
  }
  return SymbolClass::Operator;  // unlisted letters act as operators
}

bool SymbolTable::is_compound(char letter) const {
  SymbolClass c = classify(letter);
  return c == SymbolClass::CompoundOperator || c == SymbolClass::CompoundPredicate;
}

bool SymbolTable::is_predicate(char letter) const {
  SymbolClass c = classify(letter);
  return c == SymbolClass::Predicate || c == SymbolClass::CompoundPredicate;
}

const std::set<char>& SymbolTable::members(SymbolClass cls) const {
  return sets_[static_cast<int>(cls)];
}

SymbolTable SymbolTable::from_text(std::string_view text) {
  SymbolTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    // strip comments and blank lines
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t colon = line.find(':');
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    if (colon == std::string::npos) {
      throw ParseError(ParseErrorKind::UnknownToken, "table line missing ':': " + line);
    }
    std::string key = line.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    SymbolClass cls;
    if (key == "operators") cls = SymbolClass::Operator;
    else if (key == "predicates") cls = SymbolClass::Predicate;
    else if (key == "compound_operators") cls = SymbolClass::CompoundOperator;
    else if (key == "compound_predicates") cls = SymbolClass::CompoundPredicate;
    else throw ParseError(ParseErrorKind::UnknownToken, "unknown table class: " + key);
    for (std::size_t i = colon + 1; i < line.size(); ++i) {
      char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r') continue;
      t.add(cls, c);
    }
  }
  return t;
}

SymbolTable SymbolTable::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(ParseErrorKind::UnknownToken, "cannot open table file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

// ---------------------------------------------------------------------------
// Native parser.

namespace {

struct NativeParser {
  std::string_view text;
  std::size_t pos = 0;
  const SymbolTable& table;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  // Recognizes the UTF-8 glyphs '∘' (U+2218) and 'λ' (U+03BB) in place.
  bool match_utf8(std::string_view seq) {
    if (text.substr(pos, seq.size()) == seq) {
      pos += seq.size();
      return true;
    }
    return false;
  }

  RecExpr parse_items(bool in_group) {
    RecExpr expr;
    while (!eof()) {
      char c = peek();
      if (c == ')') {
        if (!in_group) {
          throw ParseError(ParseErrorKind::UnbalancedParens, "unmatched ')'", pos);
        }
        return expr;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (c == '(') {
        std::size_t open = pos++;
        Group g{parse_items(true)};
        if (eof() || peek() != ')') {
          throw ParseError(ParseErrorKind::UnbalancedParens, "unclosed '('", open);
        }
        ++pos;
        expr.items.emplace_back(std::move(g));
        continue;
      }
      if (c == ':') { ++pos; expr.items.emplace_back(Colon{}); continue; }
      if (c == ';') { ++pos; expr.items.emplace_back(Semicolon{}); continue; }
      if (c == '.') { ++pos; expr.items.emplace_back(Period{}); continue; }
      if (match_utf8("\xe2\x88\x98")) { expr.items.emplace_back(Period{}); continue; }  // ∘
      if (match_utf8("\xce\xbb")) { expr.items.emplace_back(Lambda{}); continue; }      // λ
      if (c == '\\') {
        if (pos + 1 < text.size() && text[pos + 1] == 'l') {
          pos += 2;
          expr.items.emplace_back(Lambda{});
          continue;
        }
        // a lone backslash is an ordinary letter
      }
      // A letter of the alphabet.
      std::size_t at = pos++;
      Symbol s{c, std::nullopt};
      if (table.is_compound(c)) {
        if (eof()) {
          throw ParseError(ParseErrorKind::DanglingCompound,
                           std::string("compound symbol '") + c + "' lacks its parameter", at);
        }
        s.param = text[pos++];  // verbatim: space, ')' and friends included
      }
      expr.items.emplace_back(s);
    }
    if (in_group) {
      throw ParseError(ParseErrorKind::UnbalancedParens, "unclosed '('");
    }
    return expr;
  }
};

}  // namespace

RecExpr parse(std::string_view text, const SymbolTable& table) {
  NativeParser p{text, 0, table};
  return p.parse_items(false);
}

// ---------------------------------------------------------------------------
// CTSS parser.

namespace {

struct CtssToken {
  enum class Kind { Open, Close, Word };
  Kind kind;
  std::string word;
  std::size_t pos;
};

std::vector<CtssToken> ctss_tokens(std::string_view text) {
  std::vector<CtssToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '(') { out.push_back({CtssToken::Kind::Open, "", i}); ++i; continue; }
    if (c == ')') { out.push_back({CtssToken::Kind::Close, "", i}); ++i; continue; }
    std::size_t start = i;
    std::string w;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '(' && text[i] != ')') {
      w += text[i++];
    }
    out.push_back({CtssToken::Kind::Word, w, start});
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

char upch(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

struct CtssParser {
  const std::vector<CtssToken>& toks;
  std::size_t pos = 0;
  const SymbolTable& table;

  bool eof() const { return pos >= toks.size(); }

  // Resolves a head token to a compound letter, if it names one.
  std::optional<char> compound_letter(const std::string& word) const {
    std::string w = lower(word);
    if (w == "eq") return '=';
    if (w == "qu") return '"';
    if (w.size() == 1 && table.is_compound(upch(w[0]))) return upch(w[0]);
    return std::nullopt;
  }

  RecItem parse_word(const CtssToken& t) {
    std::string w = lower(t.word);
    if (w == "sc") return Semicolon{};
    if (w == "co") return Colon{};
    if (w == "pd") return Period{};
    if (t.word.size() == 1) {
      char c = upch(t.word[0]);
      if (c == ':' || c == ';' || c == '.' || c == '\\') {
        throw ParseError(ParseErrorKind::ReservedLetter,
                         "'" + t.word + "' is an operational sign, not a letter", t.pos);
      }
      if (table.is_compound(c)) {
        throw ParseError(ParseErrorKind::DanglingCompound,
                         "compound symbol '" + t.word + "' needs (head param) list form", t.pos);
      }
      return Symbol{c, std::nullopt};
    }
    if (compound_letter(t.word)) {
      throw ParseError(ParseErrorKind::DanglingCompound,
                       "compound symbol '" + t.word + "' lacks its parameter", t.pos);
    }
    throw ParseError(ParseErrorKind::UnknownToken, "unknown token: " + t.word, t.pos);
  }

  // Parses the sub-list after its '(' has been consumed.
  RecItem parse_list(std::size_t open_pos) {
    // Collect raw tokens first to decide compound-call vs nested group.
    if (!eof() && toks[pos].kind == CtssToken::Kind::Word) {
      if (auto cp = compound_letter(toks[pos].word)) {
        // (HEAD PARAM) with exactly two tokens is a compound call.
        std::size_t save = pos;
        const CtssToken& head = toks[pos++];
        if (!eof() && toks[pos].kind == CtssToken::Kind::Word) {
          const CtssToken& param = toks[pos];
          std::size_t after = pos + 1;
          if (after < toks.size() && toks[after].kind == CtssToken::Kind::Close) {
            if (param.word.size() != 1) {
              throw ParseError(ParseErrorKind::UnknownToken,
                               "compound parameter must be one character: " + param.word,
                               param.pos);
            }
            pos = after + 1;  // consume param and ')'
            return Symbol{*cp, upch(param.word[0])};
          }
        }
        if (!eof() && toks[pos].kind == CtssToken::Kind::Close) {
          throw ParseError(ParseErrorKind::DanglingCompound,
                           "compound symbol '" + head.word + "' lacks its parameter", head.pos);
        }
        pos = save;  // not a two-token compound call; fall through to group
      }
    }
    Group g;
    while (true) {
      if (eof()) {
        throw ParseError(ParseErrorKind::UnbalancedParens, "unclosed '('", open_pos);
      }
      const CtssToken& t = toks[pos];
      if (t.kind == CtssToken::Kind::Close) { ++pos; return g; }
      if (t.kind == CtssToken::Kind::Open) {
        ++pos;
        g.body.items.push_back(parse_list(t.pos));
        continue;
      }
      ++pos;
      g.body.items.push_back(parse_word(t));
    }
  }

  RecExpr parse_top() {
    RecExpr expr;
    while (!eof()) {
      const CtssToken& t = toks[pos];
      if (t.kind == CtssToken::Kind::Close) {
        throw ParseError(ParseErrorKind::UnbalancedParens, "unmatched ')'", t.pos);
      }
      if (t.kind == CtssToken::Kind::Open) {
        ++pos;
        expr.items.push_back(parse_list(t.pos));
        continue;
      }
      ++pos;
      expr.items.push_back(parse_word(t));
    }
    return expr;
  }
};

}  // namespace

RecExpr parse_ctss(std::string_view text, const SymbolTable& table) {
  auto toks = ctss_tokens(text);
  CtssParser p{toks, 0, table};
  return p.parse_top();
}

// ---------------------------------------------------------------------------
// Printer.

namespace {

void print_items(const RecExpr& e, Orthography orth, std::string& out);

void print_item(const RecItem& item, Orthography orth, std::string& out) {
  struct V {
    Orthography orth;
    std::string& out;
    void operator()(const Lambda&) { out += (orth == Orthography::Unicode) ? "\xce\xbb" : "\\l"; }
    void operator()(const Colon&) { out += ':'; }
    void operator()(const Semicolon&) { out += ';'; }
    void operator()(const Period&) { out += (orth == Orthography::Unicode) ? "\xe2\x88\x98" : "."; }
    void operator()(const Symbol& s) {
      out += s.letter;
      if (s.param) out += *s.param;
    }
    void operator()(const Group& g) {
      out += '(';
      print_items(g.body, orth, out);
      out += ')';
    }
  };
  std::visit(V{orth, out}, item);
}

void print_items(const RecExpr& e, Orthography orth, std::string& out) {
  for (const RecItem& it : e.items) print_item(it, orth, out);
}

}  // namespace

std::string pretty_print(const RecExpr& expr, Orthography orth) {
  std::string out;
  print_items(expr, orth, out);
  return out;
}

std::string pretty_print(const RecItem& item, Orthography orth) {
  std::string out;
  print_item(item, orth, out);
  return out;
}

}  // namespace rec
