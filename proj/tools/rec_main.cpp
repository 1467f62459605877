// Command-line front end: parse/print REC, transcribe regular expressions,
// build and compare transition systems, interpret programs, compile them to
// subroutine-call assembly, and emulate the compiled form.
//
// Exit codes: 0 = TRUE / success / equivalent; 1 = FALSE / inequivalent /
// mismatch; 2 = usage or parse errors; 3 = runtime errors.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "rec/automata.hpp"
#include "rec/codegen.hpp"
#include "rec/emulator.hpp"
#include "rec/generate.hpp"
#include "rec/regex.hpp"
#include "rec/syntax.hpp"
#include "rec/vm.hpp"

namespace {

struct UsageError {
  std::string msg;
};

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string slurp_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin),
                     std::istreambuf_iterator<char>());
}

// Expression input shared by most subcommands: a positional argument or a
// file, an optional symbol-table file, and the orthography switch.
struct ExprArgs {
  std::string expr;
  std::string file;
  std::string table_file;
  bool ctss = false;
  CLI::Option* pos = nullptr;

  void attach(CLI::App* cmd) {
    pos = cmd->add_option("expr", expr, "REC expression text");
    cmd->add_option("-f,--file", file, "read the expression from this file");
    cmd->add_option("--table", table_file,
                    "symbol table file (default: teletype alphabet R W Q = \")");
    cmd->add_flag("--ctss", ctss, "input is in CTSS orthography");
  }

  rec::SymbolTable table() const {
    return table_file.empty() ? rec::SymbolTable::defaults()
                              : rec::SymbolTable::from_file(table_file);
  }

  std::string text() const {
    if (!file.empty()) return slurp_file(file);
    if (pos != nullptr && pos->count() > 0) return expr;
    throw UsageError{"no expression given (pass it as an argument or with --file)"};
  }

  rec::RecExpr parse_with(const rec::SymbolTable& t) const {
    const std::string s = text();
    return ctss ? rec::parse_ctss(s, t) : rec::parse(s, t);
  }
};

void print_nfa_summary(const rec::Nfa& n, std::ostream& out) {
  out << "states: " << n.state_count << "\n";
  out << "initial: " << n.initial << "\n";
  out << "accepting:";
  for (rec::StateId s : n.accepting) out << ' ' << s;
  out << "\n";
  out << "alphabet:";
  for (char c : n.alphabet) out << ' ' << c;
  out << "\n";
  out << "edges: " << n.edges.size() << "\n";
  for (const auto& e : n.edges) {
    out << "  " << e.from << " -" << (e.label ? std::string(1, *e.label) : "eps")
        << "-> " << e.to << "\n";
  }
}

// ---------------------------------------------------------------------------
// selftest: a built-in smoke battery, one line per check.

int run_selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    if (ok) {
      std::cout << "ok: " << name << "\n";
    } else {
      std::cout << "FAIL: " << name << (detail.empty() ? "" : ": " + detail) << "\n";
      ++failures;
    }
  };
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      auto [ok, detail] = fn();
      report(name, ok, detail);
    } catch (const std::exception& e) {
      report(name, false, e.what());
    }
  };

  const rec::SymbolTable table = rec::SymbolTable::defaults();
  const std::string doubler = "(R=!;W\" W:)";
  const std::string stripper = "(R=!;=*(R=*;:):W:)";

  guarded("parse round-trip, both orthographies", [&]() -> std::pair<bool, std::string> {
    rec::RecExpr p = rec::parse(doubler, table);
    if (rec::parse(rec::pretty_print(p), table) != p)
      return {false, "native reprint changed the tree"};
    rec::RecExpr ctss =
        rec::parse_ctss("(r (eq =) co (eq :) sc w r q w r q w r q w)", table);
    rec::RecExpr native = rec::parse("(R==:=:;WRQWRQWRQW)", table);
    if (ctss != native) return {false, "CTSS listing disagrees with its native form"};
    return {true, {}};
  });

  guarded("interpret: copy with double spacing", [&]() -> std::pair<bool, std::string> {
    rec::TeletypeEnv env("AB!");
    rec::RunResult r = rec::run(rec::parse(doubler, table), table, env);
    if (!r.truth || env.output() != "A B ")
      return {false, "got \"" + env.output() + "\" " + (r.truth ? "TRUE" : "FALSE")};
    return {true, {}};
  });

  guarded("interpret: star stripper", [&]() -> std::pair<bool, std::string> {
    rec::TeletypeEnv env("ab*cd*ef!");
    rec::RunResult r = rec::run(rec::parse(stripper, table), table, env);
    if (!r.truth || env.output() != "abef")
      return {false, "got \"" + env.output() + "\" " + (r.truth ? "TRUE" : "FALSE")};
    return {true, {}};
  });

  guarded("transition system matches independent regex construction",
          [&]() -> std::pair<bool, std::string> {
            std::mt19937_64 rng(20260814);
            for (int i = 0; i < 20; ++i) {
              rec::rx::Regex r = rec::gen::random_regex(rng, 3);
              rec::Nfa ours = rec::rec_to_nfa(rec::rx::regex_to_rec(r), table);
              rec::Nfa oracle = rec::rx::thompson_nfa(r);
              if (!rec::language_equiv(ours, oracle))
                return {false, "disagrees on " + rec::rx::to_string(r)};
            }
            return {true, {}};
          });

  guarded("union styles denote one language", [&]() -> std::pair<bool, std::string> {
    rec::Nfa flat = rec::rec_to_nfa(rec::parse("(.A;B;C;)", table), table);
    rec::Nfa left = rec::rec_to_nfa(rec::parse("(.(.A;B;);C;)", table), table);
    rec::Nfa right = rec::rec_to_nfa(rec::parse("(.A;(.B;C;);)", table), table);
    if (!rec::language_equiv(flat, left)) return {false, "flat vs left-nested"};
    if (!rec::language_equiv(flat, right)) return {false, "flat vs right-nested"};
    return {true, {}};
  });

  guarded("compiled listing shape", [&]() -> std::pair<bool, std::string> {
    std::string got = rec::pdp::emit_text(rec::pdp::compile(rec::parse("(=!;)", table), table));
    std::string want =
        "G0001,\n"
        "\tJMS EQ\n"
        "\t!\n"
        "\tJMP G0003\n"
        "\tJMP G0002\n"
        "G0003,\n"
        "\tJMP FA\n"
        "G0004,\n"
        "G0002,\n";
    if (got != want) return {false, "listing drifted:\n" + got};
    return {true, {}};
  });

  guarded("emulator agrees with interpreter", [&]() -> std::pair<bool, std::string> {
    rec::pdp::DiffResult d =
        rec::pdp::differential_check(rec::parse(doubler, table), table, 0, "AB!");
    if (!d.equal) return {false, d.detail};
    d = rec::pdp::differential_check(rec::parse(stripper, table), table, 0, "ab*cd*ef!");
    if (!d.equal) return {false, d.detail};
    std::mt19937_64 rng(97);
    const rec::SymbolTable corpus = rec::gen::corpus_table();
    for (int i = 0; i < 20; ++i) {
      rec::RecExpr prog = rec::gen::random_program(rng, corpus);
      d = rec::pdp::differential_check(prog, corpus, 1000 + i, std::nullopt, 20000);
      if (!d.equal) return {false, rec::pretty_print(prog) + ": " + d.detail};
    }
    return {true, {}};
  });

  if (failures == 0) {
    std::cout << "selftest: all checks passed\n";
    return 0;
  }
  std::cout << "selftest: " << failures << " check(s) failed\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"REC toolchain: parser, transition systems, interpreter, compiler, emulator"};
  app.require_subcommand(1);

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "Parse an expression and reprint it");
  ExprArgs parse_args;
  parse_args.attach(cmd_parse);
  bool parse_unicode = false;
  cmd_parse->add_flag("--unicode", parse_unicode, "print with the signs ∘ and λ");

  // from-regex
  auto* cmd_fromregex =
      app.add_subcommand("from-regex", "Transcribe a regular expression into REC");
  std::string fr_text;
  cmd_fromregex->add_option("regex", fr_text, "regular expression (%, ^, letters, |, *, [ ])")
      ->required();
  bool fr_unicode = false;
  cmd_fromregex->add_flag("--unicode", fr_unicode, "print with the signs ∘ and λ");

  // nfa
  auto* cmd_nfa = app.add_subcommand("nfa", "Build the transition system of an expression");
  ExprArgs nfa_args;
  nfa_args.attach(cmd_nfa);
  bool nfa_dot = false, nfa_json_flag = false, nfa_regex = false;
  auto* nfa_dot_opt = cmd_nfa->add_flag("--dot", nfa_dot, "emit Graphviz DOT");
  cmd_nfa->add_flag("--json", nfa_json_flag, "emit JSON")->excludes(nfa_dot_opt);
  cmd_nfa->add_flag("--regex", nfa_regex,
                    "treat the input as a regular expression (independent construction)");

  // equiv
  auto* cmd_equiv = app.add_subcommand("equiv", "Decide language equivalence of two expressions");
  std::string eq_a, eq_b, eq_table_file;
  bool eq_regex = false, eq_ctss = false;
  cmd_equiv->add_option("a", eq_a, "first expression")->required();
  cmd_equiv->add_option("b", eq_b, "second expression")->required();
  cmd_equiv->add_option("--table", eq_table_file, "symbol table file");
  cmd_equiv->add_flag("--ctss", eq_ctss, "both inputs are in CTSS orthography");
  cmd_equiv->add_flag("--regex", eq_regex, "both inputs are regular expressions");

  // run
  auto* cmd_run = app.add_subcommand("run", "Interpret a program against the teletype");
  ExprArgs run_args;
  run_args.attach(cmd_run);
  std::uint64_t run_budget = rec::kDefaultBudget;
  cmd_run->add_option("--budget", run_budget, "step budget");
  std::string run_input;
  auto* run_input_opt =
      cmd_run->add_option("--input", run_input, "teletype input (default: stdin)");
  bool run_trace = false;
  cmd_run->add_flag("--trace", run_trace, "dump the execution trace to stderr");

  // compile
  auto* cmd_compile = app.add_subcommand("compile", "Compile a program to assembly");
  ExprArgs compile_args;
  compile_args.attach(cmd_compile);
  std::string compile_name;
  cmd_compile->add_option("--name", compile_name,
                          "wrap the body as a callable subroutine with this name");

  // emulate
  auto* cmd_emulate =
      app.add_subcommand("emulate", "Run the compiled form on the symbolic machine");
  ExprArgs emulate_args;
  emulate_args.attach(cmd_emulate);
  std::string emu_asm_file, emu_name = "REC", emu_input;
  std::uint64_t emu_budget = rec::kDefaultBudget;
  cmd_emulate->add_option("--asm", emu_asm_file, "emulate this assembly listing instead");
  cmd_emulate->add_option("--name", emu_name, "subroutine name for the wrapped body");
  cmd_emulate->add_option("--budget", emu_budget, "instruction budget");
  auto* emu_input_opt =
      cmd_emulate->add_option("--input", emu_input, "teletype input (default: stdin)");

  // diff
  auto* cmd_diff =
      app.add_subcommand("diff", "Differential check: interpreter vs compiled emulation");
  ExprArgs diff_args;
  diff_args.attach(cmd_diff);
  std::uint64_t diff_seed = 0, diff_budget = rec::kDefaultBudget;
  int diff_count = 1;
  std::string diff_input;
  cmd_diff->add_option("--seed", diff_seed, "first seed for the scripted environment");
  cmd_diff->add_option("--count", diff_count, "number of consecutive seeds to check")
      ->check(CLI::PositiveNumber);
  cmd_diff->add_option("--budget", diff_budget, "step budget for both sides");
  auto* diff_input_opt = cmd_diff->add_option(
      "--input", diff_input, "use a teletype with this input instead (one deterministic check)");

  // selftest
  auto* cmd_selftest = app.add_subcommand("selftest", "Run the built-in smoke checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_parse->parsed()) {
      rec::SymbolTable t = parse_args.table();
      rec::RecExpr e = parse_args.parse_with(t);
      std::cout << rec::pretty_print(
                       e, parse_unicode ? rec::Orthography::Unicode : rec::Orthography::Ascii)
                << "\n";
      return 0;
    }

    if (cmd_fromregex->parsed()) {
      rec::rx::Regex r = rec::rx::parse_regex(fr_text);
      std::cout << rec::pretty_print(rec::rx::regex_to_rec(r), fr_unicode
                                                                  ? rec::Orthography::Unicode
                                                                  : rec::Orthography::Ascii)
                << "\n";
      return 0;
    }

    if (cmd_nfa->parsed()) {
      rec::Nfa n;
      if (nfa_regex) {
        n = rec::rx::thompson_nfa(rec::rx::parse_regex(nfa_args.text()));
      } else {
        rec::SymbolTable t = nfa_args.table();
        n = rec::rec_to_nfa(nfa_args.parse_with(t), t);
      }
      if (nfa_dot) {
        std::cout << rec::to_dot(n);
      } else if (nfa_json_flag) {
        std::cout << rec::nfa_json(n) << "\n";
      } else {
        print_nfa_summary(n, std::cout);
      }
      return 0;
    }

    if (cmd_equiv->parsed()) {
      rec::Nfa a, b;
      if (eq_regex) {
        a = rec::rx::thompson_nfa(rec::rx::parse_regex(eq_a));
        b = rec::rx::thompson_nfa(rec::rx::parse_regex(eq_b));
      } else {
        rec::SymbolTable t = eq_table_file.empty() ? rec::SymbolTable::defaults()
                                                   : rec::SymbolTable::from_file(eq_table_file);
        a = rec::rec_to_nfa(eq_ctss ? rec::parse_ctss(eq_a, t) : rec::parse(eq_a, t), t);
        b = rec::rec_to_nfa(eq_ctss ? rec::parse_ctss(eq_b, t) : rec::parse(eq_b, t), t);
      }
      const bool same = rec::language_equiv(a, b);
      std::cout << (same ? "equivalent" : "not equivalent") << "\n";
      return same ? 0 : 1;
    }

    if (cmd_run->parsed()) {
      rec::SymbolTable t = run_args.table();
      rec::RecExpr program = run_args.parse_with(t);
      rec::TeletypeEnv env(run_input_opt->count() > 0 ? run_input : slurp_stdin());
      try {
        rec::RunResult r = rec::run(program, t, env, run_budget);
        std::cout << env.output();
        if (run_trace) std::cerr << r.trace.to_string();
        std::cerr << (r.truth ? "TRUE" : "FALSE") << "\n";
        return r.truth ? 0 : 1;
      } catch (const rec::RunError&) {
        std::cout << env.output();  // keep whatever was printed before the fault
        throw;
      }
    }

    if (cmd_compile->parsed()) {
      rec::SymbolTable t = compile_args.table();
      rec::pdp::Program body = rec::pdp::compile(compile_args.parse_with(t), t);
      if (!compile_name.empty()) body = rec::pdp::wrap_subroutine(std::move(body), compile_name);
      std::cout << rec::pdp::emit_text(body);
      return 0;
    }

    if (cmd_emulate->parsed()) {
      rec::SymbolTable t = emulate_args.table();
      rec::pdp::Program prog;
      if (!emu_asm_file.empty()) {
        prog = rec::pdp::parse_asm(slurp_file(emu_asm_file));
      } else {
        prog = rec::pdp::wrap_subroutine(
            rec::pdp::compile(emulate_args.parse_with(t), t), emu_name);
      }
      rec::TeletypeEnv env(emu_input_opt->count() > 0 ? emu_input : slurp_stdin());
      try {
        rec::pdp::EmulateResult r = rec::pdp::emulate(prog, t, env, emu_budget);
        std::cout << env.output();
        std::cerr << (r.truth ? "TRUE" : "FALSE") << "\n";
        return r.truth ? 0 : 1;
      } catch (const rec::RunError&) {
        std::cout << env.output();
        throw;
      }
    }

    if (cmd_diff->parsed()) {
      rec::SymbolTable t = diff_args.table();
      rec::RecExpr program = diff_args.parse_with(t);
      std::optional<std::string> input;
      if (diff_input_opt->count() > 0) {
        input = diff_input;
        diff_count = 1;  // the teletype check does not depend on the seed
      }
      int mismatches = 0;
      for (int i = 0; i < diff_count; ++i) {
        rec::pdp::DiffResult d = rec::pdp::differential_check(
            program, t, diff_seed + static_cast<std::uint64_t>(i), input, diff_budget);
        if (!d.equal) {
          std::cout << "mismatch at seed " << diff_seed + static_cast<std::uint64_t>(i) << ": "
                    << d.detail << "\n";
          ++mismatches;
        }
      }
      if (mismatches == 0) {
        std::cout << "ok: " << diff_count << " check(s), no divergence\n";
        return 0;
      }
      return 1;
    }

    if (cmd_selftest->parsed()) {
      return run_selftest();
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 2;
  } catch (const rec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rec::RunError& e) {
    if (e.kind() == rec::RunErrorKind::NotAProgram) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }

  return 2;  // unreachable: require_subcommand guarantees a branch above
}
