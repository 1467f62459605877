#include "rec/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

namespace rec {

// ---------------------------------------------------------------------------
// Construction.

namespace {

struct Builder {
  const SymbolTable& table;
  Nfa nfa;
  int registrations = 0;
  StateId top_group_terminal = -1;

  StateId fresh() { return nfa.state_count++; }

  void edge(StateId from, std::optional<char> label, StateId to) {
    NfaEdge e{from, label, to};
    // A source registered twice (predicate + explicit '∘') would duplicate
    // its skip edges; keep the edge list duplicate-free.
    if (std::find(nfa.edges.begin(), nfa.edges.end(), e) == nfa.edges.end()) {
      nfa.edges.push_back(e);
    }
  }

  struct Pending {
    StateId source;
    bool resolved = false;  // saw at least one later delimiter
  };

  // Builds one level; returns its final "last" state.
  StateId level(const RecExpr& body, StateId I, StateId T, bool top) {
    StateId last = I;
    std::vector<Pending> pending;

    int delimiters = 0;
    for (const RecItem& item : body.items) {
      if (std::holds_alternative<Colon>(item) || std::holds_alternative<Semicolon>(item)) {
        ++delimiters;
      }
    }
    int seen = 0;

    auto register_skip = [&](StateId s) {
      pending.push_back({s, false});
      ++registrations;
    };
    // Draws the skip edges a delimiter settles. At the level's final
    // delimiter only unresolved sources are drawn: the tail segment is in
    // reach of a first skip, never of a chained one.
    auto resolve_all = [&](StateId target) {
      const bool final_delimiter = (++seen == delimiters);
      for (Pending& p : pending) {
        if (final_delimiter && p.resolved) continue;
        edge(p.source, std::nullopt, target);
        p.resolved = true;
      }
    };

    for (const RecItem& item : body.items) {
      if (std::holds_alternative<Lambda>(item)) {
        StateId n = fresh();
        edge(last, std::nullopt, n);
        last = n;
      } else if (std::holds_alternative<Colon>(item)) {
        edge(last, std::nullopt, I);
        StateId n = fresh();
        resolve_all(n);
        last = n;
      } else if (std::holds_alternative<Semicolon>(item)) {
        edge(last, std::nullopt, T);
        StateId n = fresh();
        resolve_all(n);
        last = n;
      } else if (std::holds_alternative<Period>(item)) {
        register_skip(last);
      } else if (const Symbol* s = std::get_if<Symbol>(&item)) {
        StateId n = fresh();
        edge(last, s->letter, n);
        nfa.alphabet.insert(s->letter);
        last = n;
        if (table.is_predicate(s->letter)) register_skip(last);
      } else {
        const Group& g = std::get<Group>(item);
        StateId gi = fresh(), gt = fresh();
        if (top && body.items.size() == 1) top_group_terminal = gt;
        edge(last, std::nullopt, gi);
        StateId inner_last = level(g.body, gi, gt, false);
        register_skip(inner_last);  // a group acts as though followed by '∘'
        last = gt;
      }
    }
    // Sources that never met a delimiter go to this level's T.
    for (const Pending& p : pending) {
      if (!p.resolved) edge(p.source, std::nullopt, T);
    }
    return last;
  }
};

}  // namespace

NfaBuild rec_to_nfa_build(const RecExpr& expr, const SymbolTable& table) {
  Builder b{table, {}, 0, -1};
  StateId I = b.fresh();
  StateId T = b.fresh();
  b.nfa.initial = I;
  StateId last = b.level(expr, I, T, true);
  b.nfa.accepting = {last};
  return NfaBuild{std::move(b.nfa), T, b.top_group_terminal, b.registrations};
}

Nfa rec_to_nfa(const RecExpr& expr, const SymbolTable& table) {
  return rec_to_nfa_build(expr, table).nfa;
}

// ---------------------------------------------------------------------------
// Closures, determinization, membership.

namespace {

std::vector<std::vector<StateId>> eps_adjacency(const Nfa& n) {
  std::vector<std::vector<StateId>> adj(n.state_count);
  for (const NfaEdge& e : n.edges) {
    if (!e.label) adj[e.from].push_back(e.to);
  }
  return adj;
}

std::set<StateId> closure_with(const std::vector<std::vector<StateId>>& adj,
                               const std::set<StateId>& from) {
  std::set<StateId> out = from;
  std::deque<StateId> work(from.begin(), from.end());
  while (!work.empty()) {
    StateId s = work.front();
    work.pop_front();
    for (StateId t : adj[s]) {
      if (out.insert(t).second) work.push_back(t);
    }
  }
  return out;
}

std::set<StateId> move_on(const Nfa& n, const std::set<StateId>& from, char letter) {
  std::set<StateId> out;
  for (const NfaEdge& e : n.edges) {
    if (e.label && *e.label == letter && from.count(e.from)) out.insert(e.to);
  }
  return out;
}

}  // namespace

std::set<StateId> epsilon_closure(const Nfa& n, const std::set<StateId>& from) {
  return closure_with(eps_adjacency(n), from);
}

Dfa determinize(const Nfa& n) { return determinize(n, n.alphabet); }

Dfa determinize(const Nfa& n, const std::set<char>& alphabet) {
  auto adj = eps_adjacency(n);
  Dfa d;
  d.alphabet.assign(alphabet.begin(), alphabet.end());

  std::map<std::set<StateId>, StateId> ids;
  std::vector<std::set<StateId>> subsets;
  auto intern = [&](const std::set<StateId>& subset) {
    auto [it, fresh] = ids.emplace(subset, static_cast<StateId>(subsets.size()));
    if (fresh) subsets.push_back(subset);
    return it->second;
  };

  std::set<StateId> start = closure_with(adj, {n.initial});
  d.initial = intern(start);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::set<StateId> here = subsets[i];  // copy: subsets grows below
    d.next.emplace_back();
    for (char c : d.alphabet) {
      d.next[i].push_back(intern(closure_with(adj, move_on(n, here, c))));
    }
  }
  d.state_count = static_cast<int>(subsets.size());
  d.accepting.resize(subsets.size(), false);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (StateId s : subsets[i]) {
      if (n.accepting.count(s)) { d.accepting[i] = true; break; }
    }
  }
  return d;
}

bool dfa_accepts(const Dfa& d, std::string_view word) {
  StateId s = d.initial;
  for (char c : word) {
    auto it = std::find(d.alphabet.begin(), d.alphabet.end(), c);
    if (it == d.alphabet.end()) return false;
    s = d.next[s][it - d.alphabet.begin()];
  }
  return d.accepting[s];
}

bool nfa_accepts_at(const Nfa& n, std::string_view word, const std::set<StateId>& accept) {
  auto adj = eps_adjacency(n);
  std::set<StateId> cur = closure_with(adj, {n.initial});
  for (char c : word) {
    cur = closure_with(adj, move_on(n, cur, c));
    if (cur.empty()) return false;
  }
  for (StateId s : cur) {
    if (accept.count(s)) return true;
  }
  return false;
}

bool nfa_accepts(const Nfa& n, std::string_view word) {
  return nfa_accepts_at(n, word, n.accepting);
}

bool language_equiv(const Nfa& a, const Nfa& b) {
  std::set<char> alphabet = a.alphabet;
  alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  Dfa da = determinize(a, alphabet);
  Dfa db = determinize(b, alphabet);

  std::set<std::pair<StateId, StateId>> seen;
  std::deque<std::pair<StateId, StateId>> work{{da.initial, db.initial}};
  seen.insert({da.initial, db.initial});
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    if (da.accepting[x] != db.accepting[y]) return false;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      std::pair<StateId, StateId> n{da.next[x][i], db.next[y][i]};
      if (seen.insert(n).second) work.push_back(n);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Output.

namespace {

std::set<StateId> reachable_states(const Nfa& n) {
  std::vector<std::vector<StateId>> adj(n.state_count);
  for (const NfaEdge& e : n.edges) adj[e.from].push_back(e.to);
  std::set<StateId> out{n.initial};
  std::deque<StateId> work{n.initial};
  while (!work.empty()) {
    StateId s = work.front();
    work.pop_front();
    for (StateId t : adj[s]) {
      if (out.insert(t).second) work.push_back(t);
    }
  }
  return out;
}

}  // namespace

std::string to_dot(const Nfa& n) {
  std::set<StateId> keep = reachable_states(n);
  std::ostringstream out;
  out << "digraph nfa {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  __start [shape=point];\n";
  for (StateId s : keep) {
    if (n.accepting.count(s)) out << "  s" << s << " [shape=doublecircle];\n";
  }
  out << "  __start -> s" << n.initial << ";\n";
  for (const NfaEdge& e : n.edges) {
    if (!keep.count(e.from)) continue;
    out << "  s" << e.from << " -> s" << e.to << " [label=\"";
    if (e.label) out << *e.label;
    else out << "\xce\xb5";  // ε
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string nfa_json(const Nfa& n) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["states"] = n.state_count;
  j["initial"] = n.initial;
  j["accepting"] = n.accepting;
  j["alphabet"] = nlohmann::json::array();
  for (char c : n.alphabet) j["alphabet"].push_back(std::string(1, c));
  j["edges"] = nlohmann::json::array();
  for (const NfaEdge& e : n.edges) {
    nlohmann::json je;
    je["from"] = e.from;
    je["label"] = e.label ? std::string(1, *e.label) : std::string("\xce\xb5");
    je["to"] = e.to;
    j["edges"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace rec
