#include "rec/codegen.hpp"

#include <cctype>
#include <cstdio>

namespace rec::pdp {

std::string subroutine_name(char letter) {
  if (letter == '=') return "EQ";
  if (letter == '"') return "QU";
  return std::string(1, letter);
}

std::optional<char> letter_for_name(const std::string& name) {
  if (name == "EQ") return '=';
  if (name == "QU") return '"';
  if (name.size() == 1) return name[0];
  return std::nullopt;
}

namespace {

bool gensym_like(const std::string& name) {
  if (name.size() != 5 || name[0] != 'G') return false;
  for (std::size_t i = 1; i < 5; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

struct Emitter {
  const SymbolTable& table;
  std::vector<AsmItem> out;
  int counter = 0;

  std::string gensym() {
    char buf[16];
    std::snprintf(buf, sizeof buf, "G%04d", ++counter);
    return buf;
  }

  void group(const RecExpr& body, const std::string& of) {
    std::string he = gensym();
    std::string tr = gensym();
    out.emplace_back(Label{he});
    std::string fa = gensym();
    for (const RecItem& item : body.items) {
      if (std::holds_alternative<Lambda>(item)) {
        // no code
      } else if (std::holds_alternative<Colon>(item)) {
        out.emplace_back(Jump{he});
        out.emplace_back(Label{fa});
        fa = gensym();
      } else if (std::holds_alternative<Semicolon>(item)) {
        out.emplace_back(Jump{tr});
        out.emplace_back(Label{fa});
        fa = gensym();
      } else if (std::holds_alternative<Period>(item)) {
        out.emplace_back(Jump{fa});
      } else if (const Symbol* s = std::get_if<Symbol>(&item)) {
        out.emplace_back(Call{subroutine_name(s->letter)});
        if (s->param) out.emplace_back(ParamWord{*s->param});
        // Everything but a plain operator reports truth via the skip return,
        // so the false branch lands on a jump to the segment's false exit.
        if (table.classify(s->letter) != SymbolClass::Operator) {
          out.emplace_back(Jump{fa});
        }
      } else {
        group(std::get<Group>(item).body, fa);
      }
    }
    out.emplace_back(Jump{of});
    out.emplace_back(Label{fa});
    out.emplace_back(Label{tr});
  }
};

}  // namespace

Program compile(const RecExpr& program, const SymbolTable& table) {
  if (program.items.size() != 1 || !std::holds_alternative<Group>(program.items[0])) {
    throw RunError(RunErrorKind::NotAProgram, "a program is a single parenthesized group");
  }
  Emitter e{table, {}, 0};
  e.group(std::get<Group>(program.items[0]).body, kFalseExit);
  return Program{std::move(e.out), ""};
}

Program wrap_subroutine(Program body, const std::string& name) {
  if (name.empty() || gensym_like(name) || name == kFalseExit) {
    throw RunError(RunErrorKind::NameCollision, "unusable subroutine name: " + name);
  }
  for (const AsmItem& item : body.items) {
    if (const Label* l = std::get_if<Label>(&item)) {
      if (l->name == name) {
        throw RunError(RunErrorKind::NameCollision, "name already labels the body: " + name);
      }
    }
  }
  Program p;
  p.entry = name;
  p.items.reserve(body.items.size() + 5);
  p.items.emplace_back(EntryCell{name});
  for (AsmItem& item : body.items) p.items.push_back(std::move(item));
  // TRUE: control fell through TR; bump the stored return and skip-return.
  p.items.emplace_back(IncrementSkip{name});
  p.items.emplace_back(IndirectJump{name});
  // FALSE: the body's Jump(FA) lands here; plain return.
  p.items.emplace_back(Label{kFalseExit});
  p.items.emplace_back(IndirectJump{name});
  return p;
}

// ---------------------------------------------------------------------------
// Listing text.

std::string emit_text(const Program& p) {
  std::string out;
  for (const AsmItem& item : p.items) {
    struct V {
      std::string& out;
      void operator()(const Label& x) { out += x.name + ",\n"; }
      void operator()(const EntryCell& x) { out += x.name + ",\t0\n"; }
      void operator()(const Call& x) { out += "\tJMS " + x.name + "\n"; }
      void operator()(const ParamWord& x) { out += std::string("\t") + x.value + "\n"; }
      void operator()(const Jump& x) { out += "\tJMP " + x.target + "\n"; }
      void operator()(const IncrementSkip& x) { out += "\tISZ " + x.cell + "\n"; }
      void operator()(const IndirectJump& x) { out += "\tJMP I " + x.cell + "\n"; }
    };
    std::visit(V{out}, item);
  }
  return out;
}

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Program parse_asm(std::string_view text) {
  Program p;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    auto bad = [&](const char* why) {
      throw ParseError(ParseErrorKind::BadListing,
                       "line " + std::to_string(lineno) + ": " + why);
    };

    if (line[0] != '\t') {
      // `NAME,` or `NAME,<TAB>0`
      std::size_t comma = line.find(',');
      if (comma == std::string_view::npos || comma == 0) bad("expected a label");
      std::string name(line.substr(0, comma));
      std::string_view rest = line.substr(comma + 1);
      if (rest.empty()) {
        p.items.emplace_back(Label{name});
      } else if (rest == "\t0") {
        p.items.emplace_back(EntryCell{name});
        if (p.entry.empty()) p.entry = name;
      } else {
        bad("junk after label");
      }
      continue;
    }
    std::string_view body = line.substr(1);
    if (starts_with(body, "JMS ")) {
      p.items.emplace_back(Call{std::string(body.substr(4))});
    } else if (starts_with(body, "JMP I ")) {
      p.items.emplace_back(IndirectJump{std::string(body.substr(6))});
    } else if (starts_with(body, "JMP ")) {
      p.items.emplace_back(Jump{std::string(body.substr(4))});
    } else if (starts_with(body, "ISZ ")) {
      p.items.emplace_back(IncrementSkip{std::string(body.substr(4))});
    } else if (body.size() == 1) {
      p.items.emplace_back(ParamWord{body[0]});
    } else {
      bad("unrecognized instruction");
    }
  }
  return p;
}

}  // namespace rec::pdp
