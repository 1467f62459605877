// End-to-end acceptance checks for the whole toolchain. Each criterion prints
// exactly one PASS/FAIL line; the process exits nonzero if any fail.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "rec/automata.hpp"
#include "rec/codegen.hpp"
#include "rec/emulator.hpp"
#include "rec/generate.hpp"
#include "rec/regex.hpp"
#include "rec/syntax.hpp"
#include "rec/vm.hpp"

using namespace rec;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int n, const std::string& title, const std::function<bool(std::string&)>& body) {
    std::string note;
    bool ok = false;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      note = std::string("unexpected exception: ") + e.what();
    } catch (...) {
      note = "unexpected non-standard exception";
    }
    if (!ok) ++failures;
    std::printf("criterion %d: %-52s %s%s%s\n", n, title.c_str(), ok ? "PASS" : "FAIL",
                note.empty() ? "" : "  -- ", note.c_str());
    std::fflush(stdout);
  }
};

// ---------------------------------------------------------------------------
// criterion 1: every regex denotes the same language as its transcription.

bool regex_equivalence(std::string& note) {
  using clock = std::chrono::steady_clock;
  SymbolTable t;
  std::vector<rx::Regex> corpus;
  for (const char* base : {"%", "^", "a", "ab", "a|b", "a*"}) {
    corpus.push_back(rx::parse_regex(base));
  }
  std::mt19937_64 rng(2024);
  while (corpus.size() < 206) corpus.push_back(gen::random_regex(rng, 4, "ab"));

  auto start = clock::now();
  int bad = 0;
  for (const rx::Regex& r : corpus) {
    Nfa reference = rx::thompson_nfa(r);
    Nfa ours = rec_to_nfa(rx::regex_to_rec(r), t);
    if (!language_equiv(reference, ours)) {
      ++bad;
      if (bad == 1) note = "first mismatch: " + rx::to_string(r);
    }
  }
  double secs = std::chrono::duration<double>(clock::now() - start).count();
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << corpus.size() << " regexes, " << secs << "s";
  if (bad) os << ", " << bad << " mismatched; " << note;
  note = os.str();
  return bad == 0 && secs < 10.0;
}

// ---------------------------------------------------------------------------
// criterion 2: the three stylings of a union are interchangeable.

bool union_stylings(std::string& note) {
  // Letters of a transcribed regex are plain symbols; classifying them as
  // predicates would add failure paths that are not part of the denotation.
  SymbolTable t;
  const char* forms[] = {"(.(.A;B;);C;)", "(.A;(.B;C;);)", "(.A;B;C;)"};
  std::vector<Nfa> nfas;
  for (const char* f : forms) nfas.push_back(rec_to_nfa(parse(f, t), t));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (!language_equiv(nfas[i], nfas[j])) {
        note = std::string(forms[i]) + " != " + forms[j];
        return false;
      }
    }
  }
  note = "3 forms pairwise equivalent";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 3: the group calculus realizes the boolean connectives.

bool boolean_connectives(std::string& note) {
  SymbolTable t;
  t.add(SymbolClass::Predicate, 'A');
  t.add(SymbolClass::Predicate, 'B');
  auto table = [&](const char* text, const std::vector<char>& letters) {
    return truth_table(parse(text, t), t, letters);
  };
  using Rows = std::vector<bool>;
  struct Case {
    const char* text;
    std::vector<char> letters;
    Rows want;
  };
  const Case cases[] = {
      {"(AB;)", {'A', 'B'}, Rows{false, false, false, true}},  // AND
      {"(A;B;)", {'A', 'B'}, Rows{false, true, true, true}},   // OR
      {"(A)", {'A'}, Rows{true, false}},                       // NOT
      {"((A))", {'A'}, Rows{false, true}},                     // double negation
      {"(A;)", {'A'}, Rows{false, true}},                      // identity
      {"()", {}, Rows{false}},                                 // constant false
      {"(;)", {}, Rows{true}},                                 // constant true
  };
  for (const Case& c : cases) {
    if (table(c.text, c.letters) != c.want) {
      note = std::string("truth table wrong for ") + c.text;
      return false;
    }
  }

  // Short-circuiting is observable in the event log.
  {
    ScriptedEnv env = ScriptedEnv::with_assignment({{'A', false}, {'B', true}});
    run(parse("(AB;)", t), t, env);
    if (env.log().size() != 1 || env.log()[0].letter != 'A') {
      note = "AND consulted B after A failed";
      return false;
    }
  }
  {
    ScriptedEnv env = ScriptedEnv::with_assignment({{'A', true}, {'B', true}});
    run(parse("(A;B;)", t), t, env);
    if (env.log().size() != 1 || env.log()[0].letter != 'A') {
      note = "OR consulted B after A held";
      return false;
    }
  }
  note = "7 tables exhaustive, short-circuit logs clean";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 4: the two teletype programs, checked first against a hand-trace
// oracle written independently of the interpreter.

namespace hand {

// Minimal re-statement of the control rules over a parsed body. Kept apart
// from the production interpreter on purpose: no shared execution code.
struct Machine {
  std::string in;
  std::size_t cursor = 0;
  std::optional<char> ws;
  std::string out;
  bool faulted = false;

  bool group(const RecExpr& body) {
    std::size_t pc = 0;
    while (!faulted) {
      if (pc >= body.items.size()) return false;
      const RecItem& it = body.items[pc];
      if (std::holds_alternative<Semicolon>(it)) return true;
      if (std::holds_alternative<Colon>(it)) {
        pc = 0;
        continue;
      }
      if (std::holds_alternative<Lambda>(it)) {
        ++pc;
        continue;
      }
      bool ok;
      if (std::holds_alternative<Period>(it)) {
        ok = false;
      } else if (const Group* g = std::get_if<Group>(&it)) {
        ok = group(g->body);
      } else {
        ok = symbol(std::get<Symbol>(it));
      }
      if (ok) {
        ++pc;
        continue;
      }
      ++pc;
      while (pc < body.items.size() && !std::holds_alternative<Colon>(body.items[pc]) &&
             !std::holds_alternative<Semicolon>(body.items[pc])) {
        ++pc;
      }
      if (pc >= body.items.size()) return true;
      ++pc;
    }
    return false;
  }

  bool symbol(const Symbol& s) {
    switch (s.letter) {
      case 'R':
        if (cursor >= in.size()) {
          faulted = true;
          return false;
        }
        ws = in[cursor++];
        return true;
      case 'W':
        if (!ws) {
          faulted = true;
          return false;
        }
        out += *ws;
        return true;
      case '"':
        ws = s.param;
        return true;
      case '=':
        return ws && ws == s.param;
      default:
        faulted = true;
        return false;
    }
  }
};

}  // namespace hand

bool teletype_programs(std::string& note) {
  SymbolTable t = SymbolTable::defaults();
  struct Fixture {
    const char* program;
    const char* input;
    const char* output;
  };
  const Fixture fixtures[] = {
      {"(R=!;W\" W:)", "AB!", "A B "},
      {"(R=!;=*(R=*;:):W:)", "ab*cd*ef!", "abef"},
  };
  for (const Fixture& f : fixtures) {
    RecExpr prog = parse(f.program, t);

    hand::Machine oracle;
    oracle.in = f.input;
    bool oracle_truth = oracle.group(std::get<Group>(prog.items[0]).body);
    if (oracle.faulted || !oracle_truth || oracle.out != f.output) {
      note = std::string("hand oracle disagrees with the fixture for ") + f.program;
      return false;
    }

    TeletypeEnv env(f.input);
    RunResult r = run(prog, t, env);
    if (!r.truth || env.output() != f.output) {
      note = std::string("interpreter diverges on ") + f.program + ": got \"" +
             env.output() + "\"";
      return false;
    }
  }
  note = "both programs match the hand-traced oracle";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 5: the published compilation is reproduced up to label renaming,
// with exactly one documented extra instruction.

bool published_listing(std::string& note) {
  using namespace rec::pdp;
  using Items = std::vector<AsmItem>;
  const Items published{
      Label{"GO3163"}, Call{"R"},  Call{"EQ"}, ParamWord{'='}, Jump{"GO3165"},
      Label{"GO3165"}, Call{"EQ"}, ParamWord{':'}, Jump{"GO3166"}, Jump{"GO3164"},
      Label{"GO3166"},
      Call{"W"}, Call{"R"}, Call{"Q"}, Jump{"GO3167"},
      Call{"W"}, Call{"R"}, Call{"Q"}, Jump{"GO3167"},
      Call{"W"}, Call{"R"}, Call{"Q"}, Jump{"GO3167"},
      Call{"W"},
      Jump{"FA"},
      Label{"GO3167"}, Label{"GO3164"},
  };

  SymbolTable t = SymbolTable::defaults();
  Items ours = compile(parse_ctss("(r (eq =) co (eq :) sc w r q w r q w r q w)", t), t).items;

  // The single known divergence: the restart jump of ':' after the first
  // segment, which the printed listing omits.
  if (ours.size() != published.size() + 1 || !(ours[5] == AsmItem{Jump{"G0001"}})) {
    note = "expected exactly the one extra restart jump at index 5";
    return false;
  }
  ours.erase(ours.begin() + 5);

  int params = 0;
  std::map<std::string, std::string> fwd, rev;
  for (std::size_t i = 0; i < ours.size(); ++i) {
    if (ours[i].index() != published[i].index()) {
      note = "instruction kind differs at index " + std::to_string(i);
      return false;
    }
    std::string a, b;
    if (const auto* l = std::get_if<Label>(&ours[i])) {
      a = l->name;
      b = std::get<Label>(published[i]).name;
    } else if (const auto* j = std::get_if<Jump>(&ours[i])) {
      a = j->target;
      b = std::get<Jump>(published[i]).target;
    } else {
      if (!(ours[i] == published[i])) {
        note = "call/parameter differs at index " + std::to_string(i);
        return false;
      }
      params += std::holds_alternative<ParamWord>(ours[i]);
      continue;
    }
    if ((a == kFalseExit) != (b == kFalseExit)) {
      note = "FA appears on only one side at index " + std::to_string(i);
      return false;
    }
    if (a == kFalseExit) continue;
    auto [fit, fnew] = fwd.emplace(a, b);
    auto [rit, rnew] = rev.emplace(b, a);
    if (fit->second != b || rit->second != a || fnew != rnew) {
      note = "label renaming is not a bijection at index " + std::to_string(i);
      return false;
    }
  }
  if (params != 2) {
    note = "expected exactly two parameter words, saw " + std::to_string(params);
    return false;
  }
  note = "27 instructions correspond, 1 insertion, 2 parameter words";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 6: interpreted and compiled execution never disagree.

bool differential(std::string& note) {
  using rec::pdp::differential_check;
  SymbolTable corpus = gen::corpus_table();
  std::mt19937_64 rng(2026);
  int mismatches = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    RecExpr prog = gen::random_program(rng, corpus);
    pdp::DiffResult d = differential_check(prog, corpus, 40000 + i, std::nullopt, 20000);
    if (!d.equal && ++mismatches == 1) first = d.detail;
  }
  SymbolTable t = SymbolTable::defaults();
  struct Fixture {
    const char* program;
    const char* input;
  } fixtures[] = {{"(R=!;W\" W:)", "AB!"}, {"(R=!;=*(R=*;:):W:)", "ab*cd*ef!"}};
  int cases = 100;
  for (const auto& f : fixtures) {
    ++cases;
    pdp::DiffResult d = differential_check(parse(f.program, t), t, 0, std::string(f.input));
    if (!d.equal && ++mismatches == 1) first = d.detail;
  }
  std::ostringstream os;
  os << cases << " programs, " << mismatches << " mismatches";
  if (mismatches) os << "; first: " << first;
  note = os.str();
  return mismatches == 0;
}

// ---------------------------------------------------------------------------
// criterion 7: every successful run's executed-symbol word is accepted by the
// transition system at the top group's interior terminal.

bool traces_are_paths(std::string& note) {
  SymbolTable corpus = gen::corpus_table();
  std::mt19937_64 rng(97);
  int found = 0, rejected = 0;
  for (int attempt = 0; attempt < 4000 && found < 50; ++attempt) {
    RecExpr prog = gen::random_program(rng, corpus);
    ScriptedEnv env = ScriptedEnv::with_seed(60000 + attempt);
    RunResult r;
    try {
      r = run(prog, corpus, env, 4000);
    } catch (const RunError&) {
      continue;
    }
    if (!r.truth) continue;
    ++found;
    NfaBuild build = rec_to_nfa_build(prog, corpus);
    std::vector<char> letters = r.trace.executed_letters();
    std::string word(letters.begin(), letters.end());
    if (!nfa_accepts_at(build.nfa, word, {build.top_group_terminal})) {
      if (++rejected == 1) {
        note = "rejected trace \"" + word + "\" of " + pretty_print(prog);
      }
    }
  }
  if (found < 50) {
    note = "only " + std::to_string(found) + " TRUE runs found";
    return false;
  }
  if (rejected) return false;
  note = "50 TRUE runs, every trace accepted";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 8: failure modes are reported, deterministic, and never crash.

bool failure_modes(std::string& note) {
  SymbolTable t = SymbolTable::defaults();

  auto budget_kind = [&]() {
    TeletypeEnv env("");
    try {
      run(parse("(:)", t), t, env, 1000);
      return std::string("no error");
    } catch (const RunError& e) {
      if (e.kind() != RunErrorKind::StepBudgetExceeded) return std::string(e.what());
      return std::string("StepBudgetExceeded: ") + e.what();
    }
  };
  std::string once = budget_kind();
  if (once.rfind("StepBudgetExceeded", 0) != 0 || budget_kind() != once) {
    note = "unproductive loop: " + once;
    return false;
  }

  {
    TeletypeEnv env("");
    try {
      run(parse("(R;)", t), t, env);
      note = "(R;) on empty input did not fault";
      return false;
    } catch (const RunError& e) {
      if (e.kind() != RunErrorKind::InputExhausted) {
        note = std::string("(R;) raised the wrong kind: ") + e.what();
        return false;
      }
    }
  }

  // Malformed sources of every input language raise ParseError, nothing else.
  int parse_errors = 0;
  auto expect_parse_error = [&](const std::function<void()>& thunk) {
    try {
      thunk();
    } catch (const ParseError&) {
      ++parse_errors;
      return;
    } catch (...) {
    }
  };
  const char* bad_native[] = {"(", ")", "(;", "=", "(=)", "((;)", "(=", "())"};
  for (const char* s : bad_native) expect_parse_error([&] { parse(s, t); });
  const char* bad_ctss[] = {"(", "(eq", "(eq a b)", ")", "(pd x"};
  for (const char* s : bad_ctss) expect_parse_error([&] { parse_ctss(s, t); });
  const char* bad_regex[] = {"*", "a|", "|a", "", "[", "a]", "[a", "[]"};
  for (const char* s : bad_regex) expect_parse_error([&] { rx::parse_regex(s); });
  const char* bad_asm[] = {"XYZ\n", ",x\n", "\tFROB X\n"};
  for (const char* s : bad_asm) expect_parse_error([&] { pdp::parse_asm(s); });
  int total = 8 + 5 + 8 + 3;
  if (parse_errors != total) {
    note = "only " + std::to_string(parse_errors) + "/" + std::to_string(total) +
           " malformed inputs raised ParseError";
    return false;
  }
  note = "budget fault deterministic, input fault typed, " + std::to_string(total) +
         " malformed inputs rejected cleanly";
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.criterion(1, "regex and its transcription are equivalent", regex_equivalence);
  h.criterion(2, "union stylings coincide", union_stylings);
  h.criterion(3, "boolean connectives hold exhaustively", boolean_connectives);
  h.criterion(4, "teletype programs match the hand oracle", teletype_programs);
  h.criterion(5, "published listing reproduced up to renaming", published_listing);
  h.criterion(6, "interpreter and machine agree differentially", differential);
  h.criterion(7, "executed traces are accepted paths", traces_are_paths);
  h.criterion(8, "failure modes are typed and deterministic", failure_modes);
  return h.failures == 0 ? 0 : 1;
}
