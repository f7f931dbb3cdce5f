#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "incl/incl.hpp"

namespace incl::testing {

using Rng = std::mt19937_64;

inline std::string fixture_path(const std::string& name) {
  return std::string(INCL_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) { return read_text_file(fixture_path(name)); }
inline Team fixture_team(const std::string& name) { return team_from_json(fixture_text(name)); }
inline Model fixture_model(const std::string& name) { return model_from_json(fixture_text(name)); }
inline Digraph fixture_graph(const std::string& name) { return digraph_from_json(fixture_text(name)); }

inline Value v(const char* s) { return Value::of(s); }
inline Row row(std::initializer_list<const char*> vals) {
  Row r;
  for (const char* s : vals) r.push_back(Value::of(s));
  return r;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<Value> numbered(std::size_t n) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Value::of(std::to_string(i)));
  return out;
}

/// Model on {0..n-1} with a random binary E and unary P.
inline Model random_model(Rng& rng, std::size_t n, double density = 0.4) {
  auto dom = numbered(n);
  Relation e{2, {}}, p{1, {}};
  for (Value a : dom) {
    if (coin(rng, density)) p.tuples.insert({a});
    for (Value b : dom) {
      if (coin(rng, density)) e.tuples.insert({a, b});
    }
  }
  return Model(dom, {{"E", e}, {"P", p}});
}

/// Random team with up to `max_rows` distinct rows.
inline Team random_team(Rng& rng, const std::vector<std::string>& vars, const Model& model,
                        std::size_t min_rows, std::size_t max_rows) {
  const auto& dom = model.domain();
  std::size_t universe = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) universe *= dom.size();
  std::size_t want = std::min(uniform(rng, min_rows, max_rows), universe);
  std::vector<Row> rows;
  std::vector<std::size_t> codes(universe);
  for (std::size_t i = 0; i < universe; ++i) codes[i] = i;
  std::shuffle(codes.begin(), codes.end(), rng);
  for (std::size_t i = 0; i < want; ++i) {
    Row r(vars.size());
    std::size_t c = codes[i];
    for (std::size_t k = 0; k < vars.size(); ++k) {
      r[k] = dom[c % dom.size()];
      c /= dom.size();
    }
    rows.push_back(std::move(r));
  }
  return Team(vars, std::move(rows));
}

/// Every team over `vars` with at most `max_rows` rows drawn from dom^vars.
inline std::vector<Team> all_teams(const std::vector<std::string>& vars,
                                   const std::vector<Value>& dom, std::size_t max_rows) {
  std::vector<Row> universe{Row{}};
  for (std::size_t k = 0; k < vars.size(); ++k) {
    std::vector<Row> next;
    for (const auto& r : universe) {
      for (Value a : dom) {
        Row e = r;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    }
    universe = std::move(next);
  }
  std::vector<Team> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    std::vector<Row> rows;
    for (auto i : pick) rows.push_back(universe[i]);
    out.emplace_back(vars, std::move(rows));
    if (pick.size() == max_rows) return;
    for (std::size_t i = from; i < universe.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::string pick_var(Rng& rng, const std::vector<std::string>& vars) {
  return vars[uniform(rng, 0, vars.size() - 1)];
}

inline Term random_term(Rng& rng, const std::vector<std::string>& vars, bool allow_const) {
  if (allow_const && coin(rng, 0.15)) return Term::constant("0");
  return Term::var(pick_var(rng, vars));
}

/// Random first-order literal over E, P and equality.
inline Formula random_literal(Rng& rng, const std::vector<std::string>& vars) {
  switch (uniform(rng, 0, 5)) {
    case 0: return Formula::eq(random_term(rng, vars, true), random_term(rng, vars, false));
    case 1: return Formula::neg_eq(random_term(rng, vars, true), random_term(rng, vars, false));
    case 2: return Formula::rel("E", {random_term(rng, vars, false), random_term(rng, vars, true)});
    case 3: return Formula::neg_rel("E", {random_term(rng, vars, false), random_term(rng, vars, false)});
    case 4: return Formula::rel("P", {random_term(rng, vars, true)});
    default: return Formula::neg_rel("P", {random_term(rng, vars, false)});
  }
}

inline Formula random_inclusion(Rng& rng, const std::vector<std::string>& vars, std::size_t max_arity = 2) {
  std::size_t k = uniform(rng, 1, max_arity);
  std::vector<std::string> a, b;
  for (std::size_t i = 0; i < k; ++i) {
    a.push_back(pick_var(rng, vars));
    b.push_back(pick_var(rng, vars));
  }
  return Formula::inclusion(a, b);
}

/// Quantifier-free formula with exactly `atoms` atoms; inclusion atoms with
/// probability `p_inc`.
inline Formula random_qf(Rng& rng, const std::vector<std::string>& vars, std::size_t atoms,
                         double p_inc = 0.5) {
  if (atoms <= 1) return coin(rng, p_inc) ? random_inclusion(rng, vars) : random_literal(rng, vars);
  std::size_t l = uniform(rng, 1, atoms - 1);
  Formula a = random_qf(rng, vars, l, p_inc);
  Formula b = random_qf(rng, vars, atoms - l, p_inc);
  return coin(rng) ? Formula::conj(a, b) : Formula::disj(a, b);
}

/// Random first-order formula, possibly with one quantifier.
inline Formula random_fo(Rng& rng, const std::vector<std::string>& vars, std::size_t atoms) {
  if (coin(rng, 0.25)) {
    std::vector<std::string> ext = vars;
    ext.push_back("w");
    Formula body = random_qf(rng, ext, atoms, 0.0);
    return coin(rng) ? Formula::exists("w", body) : Formula::forall("w", body);
  }
  return random_qf(rng, vars, atoms, 0.0);
}

/// Acyclic digraph on vertices 0..n-1: edges go from lower to higher index
/// of a random permutation.
inline Digraph random_dag(Rng& rng, std::size_t n, double density) {
  auto vs = numbered(n);
  std::vector<Value> perm = vs;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<Value, Value>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng, density)) edges.emplace_back(perm[i], perm[j]);
    }
  }
  return Digraph(vs, edges);
}

/// Random acyclic monotone circuit with gates 1..n; gate i reads only from
/// gates with larger numbers or from T / F. Gate 1 is never an input gate.
inline Circuit random_circuit(Rng& rng, std::size_t n) {
  Circuit c;
  c.output = "1";
  for (std::size_t i = 1; i <= n; ++i) {
    Gate g;
    if (i > 1 && coin(rng, 0.15)) {
      g.op = Gate::Op::Input;
      g.value = coin(rng);
      c.gates.emplace(std::to_string(i), g);
      continue;
    }
    g.op = coin(rng) ? Gate::Op::And : Gate::Op::Or;
    auto input = [&]() -> std::string {
      if (i == n || coin(rng, 0.3)) return coin(rng, 0.6) ? "T" : "F";
      return std::to_string(uniform(rng, i + 1, n));
    };
    g.left = input();
    g.right = input();
    c.gates.emplace(std::to_string(i), g);
  }
  return c;
}

/// Graph for the deterministic reachability reduction: vertices 0..n-1 in
/// topological order, plus `a` with a single edge and `b` with a self-loop.
inline Digraph random_det_graph(Rng& rng, std::size_t n) {
  auto vs = numbered(n);
  Value a = Value::of("a"), b = Value::of("b");
  std::vector<Value> all = vs;
  all.push_back(a);
  all.push_back(b);
  std::vector<std::pair<Value, Value>> edges{{b, b}};
  auto later = [&](std::size_t i) {
    std::size_t j = uniform(rng, i + 1, n);
    return j == n ? b : vs[j];
  };
  edges.emplace_back(a, n == 0 ? b : (coin(rng, 0.2) ? b : vs[uniform(rng, 0, n - 1)]));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t deg = coin(rng, 0.6) ? 1 : uniform(rng, 0, 2);
    for (std::size_t k = 0; k < deg; ++k) edges.emplace_back(vs[i], later(i));
  }
  return Digraph(all, edges);
}

/// Graph for the keyed reachability reduction: every vertex but `b` has one
/// or two successors (cycles allowed); `b` has none.
inline Digraph random_keyed_graph(Rng& rng, std::size_t n) {
  auto vs = numbered(n);
  Value a = Value::of("a"), b = Value::of("b");
  std::vector<Value> all = vs;
  all.push_back(a);
  all.push_back(b);
  std::vector<std::pair<Value, Value>> edges;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    std::size_t deg = uniform(rng, 1, 2);
    for (std::size_t k = 0; k < deg; ++k) {
      Value to = coin(rng, 0.12) ? b : all[uniform(rng, 0, all.size() - 2)];
      edges.emplace_back(all[i], to);
    }
  }
  return Digraph(all, edges);
}

/// DAG game whose start vertex has a predecessor.
inline GameInstance random_game(Rng& rng, std::size_t n, double density) {
  while (true) {
    Digraph g = random_dag(rng, n, density);
    std::vector<Value> starts;
    for (Value v : g.vertices()) {
      if (!g.predecessors(v).empty()) starts.push_back(v);
    }
    if (!starts.empty()) return {g, starts[uniform(rng, 0, starts.size() - 1)]};
  }
}

}  // namespace incl::testing
