#include "rec/emulator.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace rec::pdp {

namespace {

// Synthetic caller return addresses: the stored cell starts at "caller + 1"
// (plain return = FALSE); one ISZ turns it into "caller + 2" (skip = TRUE).
constexpr long kReturnFalse = -2;
constexpr long kReturnTrue = -1;

struct Machine {
  const Program& p;
  const SymbolTable& table;
  Env& env;
  std::uint64_t budget;

  std::map<std::string, std::size_t> label_at;  // Label/EntryCell definitions
  std::map<std::string, long> cell;             // entry-cell contents
  Trace trace;

  void index_labels() {
    for (std::size_t i = 0; i < p.items.size(); ++i) {
      const std::string* name = nullptr;
      if (const Label* l = std::get_if<Label>(&p.items[i])) name = &l->name;
      if (const EntryCell* e = std::get_if<EntryCell>(&p.items[i])) name = &e->name;
      if (!name) continue;
      if (!label_at.emplace(*name, i).second) {
        throw RunError(RunErrorKind::NameCollision, "label defined twice: " + *name);
      }
    }
  }

  void step() {
    if (++trace.steps > budget) {
      throw RunError(RunErrorKind::StepBudgetExceeded, "step budget exceeded");
    }
  }

  std::size_t target_of(const std::string& name) {
    auto it = label_at.find(name);
    if (it == label_at.end()) {
      throw RunError(RunErrorKind::UndefinedLabel, "undefined label: " + name);
    }
    return it->second;
  }

  bool run() {
    index_labels();
    if (p.entry.empty()) {
      throw RunError(RunErrorKind::MalformedProgram, "program has no entry subroutine");
    }
    std::size_t pc = target_of(p.entry) + 1;  // JMS transfers to the word after the cell
    cell[p.entry] = kReturnFalse;

    while (true) {
      if (pc >= p.items.size()) {
        throw RunError(RunErrorKind::MalformedProgram, "control fell off the program end");
      }
      const AsmItem& item = p.items[pc];
      if (std::holds_alternative<Label>(item) || std::holds_alternative<EntryCell>(item)) {
        ++pc;  // a location, not an instruction
        continue;
      }
      step();
      if (const Call* c = std::get_if<Call>(&item)) {
        auto letter = letter_for_name(c->name);
        if (!letter) {
          throw RunError(RunErrorKind::UnboundSymbol, "unknown subroutine: " + c->name);
        }
        std::optional<char> param;
        std::size_t after = pc + 1;
        if (after < p.items.size() && std::holds_alternative<ParamWord>(p.items[after])) {
          param = std::get<ParamWord>(p.items[after]).value;
          ++after;
          if (after < p.items.size() && std::holds_alternative<ParamWord>(p.items[after])) {
            throw RunError(RunErrorKind::MalformedProgram, "multiple parameter words");
          }
        }
        switch (table.classify(*letter)) {
          case SymbolClass::Operator:
            env.perform(*letter, param);
            trace.events.push_back(
                {TraceEvent::Kind::SymbolExecuted, *letter, param, std::nullopt});
            pc = after;
            break;
          case SymbolClass::CompoundOperator:
            // Compiled through the predicate pattern; always skip-returns.
            env.perform(*letter, param);
            trace.events.push_back(
                {TraceEvent::Kind::SymbolExecuted, *letter, param, std::nullopt});
            pc = after + 1;
            break;
          case SymbolClass::Predicate:
          case SymbolClass::CompoundPredicate: {
            bool ok = env.test(*letter, param);
            trace.events.push_back({TraceEvent::Kind::SymbolExecuted, *letter, param, ok});
            pc = after + (ok ? 1 : 0);
            break;
          }
        }
      } else if (const Jump* j = std::get_if<Jump>(&item)) {
        pc = target_of(j->target);
      } else if (const IncrementSkip* z = std::get_if<IncrementSkip>(&item)) {
        auto it = cell.find(z->cell);
        if (it == cell.end()) {
          throw RunError(RunErrorKind::UndefinedLabel, "ISZ through a dead cell: " + z->cell);
        }
        ++it->second;  // an address never increments to zero, so never skips
        ++pc;
      } else if (const IndirectJump* z = std::get_if<IndirectJump>(&item)) {
        auto it = cell.find(z->cell);
        if (it == cell.end()) {
          throw RunError(RunErrorKind::UndefinedLabel, "return through a dead cell: " + z->cell);
        }
        if (it->second == kReturnFalse) return false;
        if (it->second == kReturnTrue) return true;
        pc = static_cast<std::size_t>(it->second);
      } else {
        throw RunError(RunErrorKind::MalformedProgram, "parameter word executed");
      }
    }
  }
};

}  // namespace

EmulateResult emulate(const Program& p, const SymbolTable& table, Env& env,
                      std::uint64_t budget) {
  Machine m{p, table, env, budget, {}, {}, {}};
  bool truth = m.run();
  return EmulateResult{truth, std::move(m.trace)};
}

// ---------------------------------------------------------------------------
// Differential check.

namespace {

struct Outcome {
  bool ok = false;          // completed without error
  bool truth = false;
  RunErrorKind error = RunErrorKind::StepBudgetExceeded;
  std::vector<TraceEvent> symbols;
  std::string observable;
};

std::string describe(const Outcome& o) {
  std::ostringstream out;
  if (o.ok) {
    out << (o.truth ? "TRUE" : "FALSE");
  } else {
    out << "error " << static_cast<int>(o.error);
  }
  out << ", " << o.symbols.size() << " symbols, observable \"" << o.observable << "\"";
  return out.str();
}

}  // namespace

DiffResult differential_check(const RecExpr& program, const SymbolTable& table,
                              std::uint64_t seed, std::optional<std::string> input,
                              std::uint64_t budget) {
  auto make_env = [&]() -> std::unique_ptr<Env> {
    if (input) return std::make_unique<TeletypeEnv>(*input);
    return std::make_unique<ScriptedEnv>(ScriptedEnv::with_seed(seed));
  };

  auto observe = [&](bool compiled) -> Outcome {
    Outcome o;
    std::unique_ptr<Env> env = make_env();
    try {
      if (compiled) {
        Program body = compile(program, table);
        Program sub = wrap_subroutine(std::move(body), "REC");
        EmulateResult r = emulate(sub, table, *env, budget);
        o.truth = r.truth;
        o.symbols = r.trace.symbol_events();
      } else {
        RunResult r = run(program, table, *env, budget);
        o.truth = r.truth;
        o.symbols = r.trace.symbol_events();
      }
      o.ok = true;
    } catch (const RunError& e) {
      o.error = e.kind();
    }
    o.observable = env->observable();
    return o;
  };

  Outcome vm = observe(false);
  Outcome em = observe(true);

  bool equal;
  if (vm.ok != em.ok) {
    equal = false;
  } else if (!vm.ok) {
    equal = vm.error == em.error;
  } else {
    equal = vm.truth == em.truth && vm.symbols == em.symbols &&
            vm.observable == em.observable;
  }
  if (equal) return DiffResult{true, ""};
  return DiffResult{false, "interpreter: " + describe(vm) + " | machine: " + describe(em)};
}

}  // namespace rec::pdp
