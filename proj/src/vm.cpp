#include "rec/vm.hpp"

#include <sstream>

namespace rec {

// ---------------------------------------------------------------------------
// Trace.

std::string Trace::to_string() const {
  std::ostringstream out;
  for (const TraceEvent& e : events) {
    switch (e.kind) {
      case TraceEvent::Kind::SymbolExecuted:
        out << "sym " << e.letter;
        if (e.param) out << " '" << *e.param << "'";
        if (e.outcome) out << " -> " << (*e.outcome ? "true" : "false");
        out << "\n";
        break;
      case TraceEvent::Kind::GroupEntered:
        out << "enter\n";
        break;
      case TraceEvent::Kind::GroupExited:
        out << "exit " << (e.outcome && *e.outcome ? "true" : "false") << "\n";
        break;
      case TraceEvent::Kind::Looped:
        out << "loop\n";
        break;
    }
  }
  out << "steps " << steps << "\n";
  return out.str();
}

std::vector<TraceEvent> Trace::symbol_events() const {
  std::vector<TraceEvent> out;
  for (const TraceEvent& e : events) {
    if (e.kind == TraceEvent::Kind::SymbolExecuted) out.push_back(e);
  }
  return out;
}

std::vector<char> Trace::executed_letters() const {
  std::vector<char> out;
  for (const TraceEvent& e : events) {
    if (e.kind == TraceEvent::Kind::SymbolExecuted) out.push_back(e.letter);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Environments.

void TeletypeEnv::perform(char letter, std::optional<char> param) {
  switch (letter) {
    case 'R':
      if (cursor_ >= input_.size()) {
        throw RunError(RunErrorKind::InputExhausted, "R: input exhausted");
      }
      workspace_ = input_[cursor_++];
      return;
    case 'W':
      if (!workspace_) {
        throw RunError(RunErrorKind::EmptyWorkspace, "W: workspace is empty");
      }
      output_ += *workspace_;
      return;
    case '"':
      workspace_ = param.value();  // parser guarantees the parameter
      return;
    default:
      throw RunError(RunErrorKind::UnboundSymbol,
                     std::string("operator '") + letter + "' is not bound");
  }
}

bool TeletypeEnv::test(char letter, std::optional<char> param) {
  if (letter == '=') {
    return workspace_ && *workspace_ == param.value();
  }
  throw RunError(RunErrorKind::UnboundSymbol,
                 std::string("predicate '") + letter + "' is not bound");
}

ScriptedEnv ScriptedEnv::with_assignment(std::map<char, bool> truth) {
  ScriptedEnv e;
  e.truth_ = std::move(truth);
  return e;
}

ScriptedEnv ScriptedEnv::with_seed(std::uint64_t seed) {
  ScriptedEnv e;
  e.seeded_ = true;
  e.rng_.seed(seed);
  return e;
}

void ScriptedEnv::perform(char letter, std::optional<char> param) {
  log_.push_back({TraceEvent::Kind::SymbolExecuted, letter, param, std::nullopt});
}

bool ScriptedEnv::test(char letter, std::optional<char> param) {
  bool outcome;
  if (seeded_) {
    outcome = (rng_() & 1) != 0;
  } else {
    auto it = truth_.find(letter);
    if (it == truth_.end()) {
      throw RunError(RunErrorKind::UnboundSymbol,
                     std::string("predicate '") + letter + "' has no assignment");
    }
    outcome = it->second;
  }
  log_.push_back({TraceEvent::Kind::SymbolExecuted, letter, param, outcome});
  return outcome;
}

// ---------------------------------------------------------------------------
// Execution.

namespace {

struct Vm {
  const SymbolTable& table;
  Env& env;
  std::uint64_t budget;
  Trace trace;

  void step() {
    if (++trace.steps > budget) {
      throw RunError(RunErrorKind::StepBudgetExceeded, "step budget exceeded");
    }
  }

  // Advances the cursor past the next same-level ':' or ';'. Returns false
  // when no delimiter follows (the caller's group then returns TRUE).
  static bool skip_segment(const RecExpr& body, std::size_t& cur) {
    for (std::size_t j = cur + 1; j < body.items.size(); ++j) {
      if (std::holds_alternative<Colon>(body.items[j]) ||
          std::holds_alternative<Semicolon>(body.items[j])) {
        cur = j + 1;
        return true;
      }
    }
    return false;
  }

  bool exec_group(const RecExpr& body) {
    trace.events.push_back({TraceEvent::Kind::GroupEntered, 0, std::nullopt, std::nullopt});
    std::size_t cur = 0;
    bool truth = false;
    while (true) {
      if (cur >= body.items.size()) { truth = false; break; }
      const RecItem& item = body.items[cur];
      step();
      if (std::holds_alternative<Lambda>(item)) {
        ++cur;
      } else if (std::holds_alternative<Colon>(item)) {
        trace.events.push_back({TraceEvent::Kind::Looped, 0, std::nullopt, std::nullopt});
        cur = 0;
      } else if (std::holds_alternative<Semicolon>(item)) {
        truth = true;
        break;
      } else if (std::holds_alternative<Period>(item)) {
        if (!skip_segment(body, cur)) { truth = true; break; }
      } else if (const Symbol* s = std::get_if<Symbol>(&item)) {
        if (table.is_predicate(s->letter)) {
          bool ok = env.test(s->letter, s->param);
          trace.events.push_back({TraceEvent::Kind::SymbolExecuted, s->letter, s->param, ok});
          if (ok) ++cur;
          else if (!skip_segment(body, cur)) { truth = true; break; }
        } else {
          env.perform(s->letter, s->param);
          trace.events.push_back(
              {TraceEvent::Kind::SymbolExecuted, s->letter, s->param, std::nullopt});
          ++cur;
        }
      } else {
        const Group& g = std::get<Group>(item);
        if (exec_group(g.body)) ++cur;
        else if (!skip_segment(body, cur)) { truth = true; break; }
      }
    }
    trace.events.push_back({TraceEvent::Kind::GroupExited, 0, std::nullopt, truth});
    return truth;
  }
};

}  // namespace

RunResult run(const RecExpr& program, const SymbolTable& table, Env& env, std::uint64_t budget) {
  if (program.items.size() != 1 || !std::holds_alternative<Group>(program.items[0])) {
    throw RunError(RunErrorKind::NotAProgram, "a program is a single parenthesized group");
  }
  Vm vm{table, env, budget, {}};
  bool truth = vm.exec_group(std::get<Group>(program.items[0]).body);
  return RunResult{truth, std::move(vm.trace)};
}

std::vector<bool> truth_table(const RecExpr& program, const SymbolTable& table,
                              const std::vector<char>& letters, std::uint64_t budget) {
  std::vector<bool> rows;
  const std::size_t n = letters.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::map<char, bool> assignment;
    for (std::size_t i = 0; i < n; ++i) {
      assignment[letters[i]] = (mask >> i) & 1;
    }
    ScriptedEnv env = ScriptedEnv::with_assignment(std::move(assignment));
    rows.push_back(run(program, table, env, budget).truth);
  }
  return rows;
}

}  // namespace rec
