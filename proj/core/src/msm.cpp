#include "incl/msm.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "incl/errors.hpp"
#include "incl/game.hpp"

namespace incl {

std::string to_string(Method m) {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::Graph: return "graph";
    case Method::Removal: return "removal";
    case Method::Compositional: return "compositional";
    case Method::Game: return "game";
  }
  return "?";
}

namespace {

using Mask = std::uint32_t;

// Satisfaction table over all subteams for a quantifier-free formula:
// table[M] says whether the subteam with row set M satisfies the formula.
std::vector<char> subteam_table(const Model& model, const Team& team, const Formula& f) {
  const std::size_t n = team.size();
  const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
  std::vector<char> table(std::size_t{full} + 1, 0);
  if (f.is_literal() || (f.is_first_order() && f.is_quantifier_free())) {
    Mask good = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (satisfies_row(model, team, i, f)) good |= Mask{1} << i;
    }
    for (Mask m = 0; m <= full; ++m) table[m] = (m & ~good) == 0;
    return table;
  }
  if (f.is_inclusion()) {
    auto lc = team.columns(f.included());
    auto rc = team.columns(f.including());
    std::vector<Mask> wit(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto xi = team.project(i, lc);
      for (std::size_t j = 0; j < n; ++j) {
        if (team.project(j, rc) == xi) wit[i] |= Mask{1} << j;
      }
    }
    for (Mask m = 0; m <= full; ++m) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (m >> i & 1) ok = (wit[i] & m) != 0;
      }
      table[m] = ok;
    }
    return table;
  }
  auto a = subteam_table(model, team, f.left());
  auto b = subteam_table(model, team, f.right());
  if (f.kind() == FormulaKind::And) {
    for (Mask m = 0; m <= full; ++m) table[m] = a[m] && b[m];
    return table;
  }
  // Y u Z = M: Y ranges over submasks of M, Z contains M \ Y.
  for (Mask m = 0; m <= full; ++m) {
    bool ok = false;
    for (Mask y = m;; y = (y - 1) & m) {
      if (a[y]) {
        Mask rest = m & ~y;
        for (Mask z = y;; z = (z - 1) & y) {
          if (b[rest | z]) {
            ok = true;
            break;
          }
          if (z == 0) break;
        }
      }
      if (ok || y == 0) break;
    }
    table[m] = ok;
  }
  return table;
}

Team select_rows(const Team& team, const std::vector<bool>& keep) { return team.select(keep); }

}  // namespace

Team msm_brute(const Model& model, const Team& team, const Formula& phi, const MsmOptions& opts) {
  check_free_vars(team, phi);
  check_team_in_model(team, model);
  const std::size_t n = team.size();
  if (n > opts.brute_max_rows) {
    throw GuardExceeded("brute force over " + std::to_string(n) + " rows exceeds the guard of " +
                        std::to_string(opts.brute_max_rows));
  }
  if (n == 0) return team;
  const Mask full = (Mask{1} << n) - 1;
  if (phi.is_quantifier_free()) {
    auto table = subteam_table(model, team, phi);
    Mask acc = 0;
    for (Mask m = 0; m <= full; ++m) {
      if (table[m]) acc |= m;
    }
    return team.select_mask(acc);
  }
  if (model.domain().size() > opts.brute_max_domain) {
    throw GuardExceeded("brute force for a quantified formula over a domain of " +
                        std::to_string(model.domain().size()) + " exceeds the guard of " +
                        std::to_string(opts.brute_max_domain));
  }
  std::vector<Mask> order;
  order.reserve(std::size_t{full} + 1);
  for (Mask m = 1; m <= full; ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
  Mask acc = 0;
  for (Mask m : order) {
    if ((m & ~acc) == 0) continue;
    if (satisfies_team(model, team.select_mask(m), phi, opts.eval)) acc |= m;
    if (acc == full) break;
  }
  return team.select_mask(acc);
}

Team msm_graph(const Model& model, const Team& team, const std::vector<std::string>& xs,
               const std::vector<std::string>& ys, const std::optional<Formula>& alpha,
               bool bidirectional) {
  if (alpha && !alpha->is_first_order()) {
    throw UnsupportedFragment("the side condition of the graph method must be first-order");
  }
  if (xs.empty() || xs.size() != ys.size()) {
    throw DomainError("inclusion arms must be nonempty and of equal length");
  }
  const std::size_t n = team.size();
  auto lc = team.columns(xs);
  auto rc = team.columns(ys);
  std::vector<bool> good(n, true);
  if (alpha) {
    check_free_vars(team, *alpha);
    good = satisfying_rows(model, team, *alpha);
  }
  std::unordered_map<Tuple, std::vector<std::size_t>, TupleHash> by_target;
  for (std::size_t j = 0; j < n; ++j) {
    if (good[j]) by_target[team.project(j, rc)].push_back(j);
  }
  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!good[i]) continue;
    auto it = by_target.find(team.project(i, lc));
    if (it == by_target.end()) continue;
    for (auto j : it->second) {
      succ[i].push_back(j);
      pred[j].push_back(i);
    }
  }
  // Peel rows without successors (and, bidirectionally, without predecessors);
  // what remains reaches a cycle (and is reached from one).
  std::vector<std::size_t> out_deg(n), in_deg(n);
  std::vector<bool> alive(n, true);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    out_deg[i] = succ[i].size();
    in_deg[i] = pred[i].size();
    if (out_deg[i] == 0 || (bidirectional && in_deg[i] == 0)) {
      alive[i] = false;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto p : pred[v]) {
      if (alive[p] && --out_deg[p] == 0) {
        alive[p] = false;
        queue.push_back(p);
      }
    }
    if (!bidirectional) continue;
    for (auto s : succ[v]) {
      if (alive[s] && --in_deg[s] == 0) {
        alive[s] = false;
        queue.push_back(s);
      }
    }
  }
  return select_rows(team, alive);
}

Team msm_removal(const Team& team, const std::vector<Formula>& atoms, std::size_t* rounds) {
  struct Cols {
    std::vector<std::size_t> lhs, rhs;
  };
  std::vector<Cols> cols;
  for (const auto& a : atoms) {
    if (!a.is_inclusion()) {
      throw UnsupportedFragment("removal handles inclusion atoms only, got '" + to_string(a) + "'");
    }
    cols.push_back({team.columns(a.included()), team.columns(a.including())});
  }
  const std::size_t n = team.size();
  std::vector<bool> alive(n, true);
  std::size_t r = 0;
  while (true) {
    std::vector<std::size_t> doomed;
    for (const auto& c : cols) {
      std::unordered_set<Tuple, TupleHash> targets;
      for (std::size_t j = 0; j < n; ++j) {
        if (alive[j]) targets.insert(team.project(j, c.rhs));
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (alive[i] && !targets.contains(team.project(i, c.lhs))) doomed.push_back(i);
      }
    }
    if (doomed.empty()) break;
    ++r;
    for (auto i : doomed) alive[i] = false;
  }
  if (rounds) *rounds = r;
  return select_rows(team, alive);
}

Team msm_removal(const Model& model, const Team& team, const std::vector<Formula>& atoms) {
  check_team_in_model(team, model);
  return msm_removal(team, atoms);
}

Team msm_game(const Model& model, const Team& team, const Formula& phi) {
  if (!phi.is_quantifier_free()) {
    throw UnsupportedFragment("the safety game is defined for quantifier-free formulas");
  }
  check_free_vars(team, phi);
  if (team.empty()) return team;
  GameArena arena = GameArena::build(model, team, 0, phi);
  GameSolution sol = solve(arena);
  std::vector<bool> keep(team.size());
  for (std::size_t s = 0; s < team.size(); ++s) {
    keep[s] = !sol.attractor[arena.assignment_node(s, arena.tree().root())];
  }
  return team.select(keep);
}

bool is_compositional(const Formula& phi) {
  if (phi.is_first_order() || phi.is_inclusion()) return true;
  switch (phi.kind()) {
    case FormulaKind::Or:
      return is_compositional(phi.left()) && is_compositional(phi.right());
    case FormulaKind::And:
      return (phi.left().is_first_order() && is_compositional(phi.right())) ||
             (phi.right().is_first_order() && is_compositional(phi.left()));
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return is_compositional(phi.body());
    default:
      return false;
  }
}

namespace {

class Composer {
 public:
  Composer(const Model& model, const MsmOptions& opts) : model_(model), opts_(opts) {}

  Team nu(const Team& x, const Formula& f) {
    if (x.empty()) return x;
    if (f.is_first_order()) return x.select(satisfying_rows(model_, x, f));
    switch (f.kind()) {
      case FormulaKind::Inclusion:
        return msm_removal(x, {f});
      case FormulaKind::Or:
        return team_union(nu(x, f.left()), nu(x, f.right()));
      case FormulaKind::And:
        if (f.right().is_first_order()) return nu(nu(x, f.right()), f.left());
        if (f.left().is_first_order()) return nu(nu(x, f.left()), f.right());
        if (f.is_quantifier_free()) return msm_game(model_, x, f);
        return msm_brute(model_, x, f, opts_);
      case FormulaKind::Exists:
        return exists(x, f);
      case FormulaKind::Forall:
        return forall(x, f);
      default:
        return x;
    }
  }

 private:
  // Row indices of X[A/x] holding s(a/x) for each row s and domain value a.
  std::vector<std::vector<std::size_t>> extensions(const Team& x, const Team& ext,
                                                   const std::string& var) {
    const auto& dom = model_.domain();
    auto col = ext.column(var);
    std::vector<std::vector<std::size_t>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Row r = x.row(i);
      if (!x.column_of(var)) r.push_back(Value());
      for (Value a : dom) {
        r[col] = a;
        out[i].push_back(*ext.find(r));
      }
    }
    return out;
  }

  Team exists(const Team& x, const Formula& f) {
    Team ext = extend_all(x, f.bound_var(), model_.domain());
    Team sub = nu(ext, f.body());
    auto exts = extensions(x, ext, f.bound_var());
    std::vector<bool> keep(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      keep[i] = std::any_of(exts[i].begin(), exts[i].end(),
                            [&](std::size_t j) { return sub.contains(ext.row(j)); });
    }
    return x.select(keep);
  }

  // Greatest fixpoint: drop rows with some extension outside the maximal
  // subteam of the current extended team, until nothing changes.
  Team forall(const Team& x, const Formula& f) {
    Team y = x;
    while (!y.empty()) {
      Team ext = extend_all(y, f.bound_var(), model_.domain());
      Team sub = nu(ext, f.body());
      auto exts = extensions(y, ext, f.bound_var());
      std::vector<bool> keep(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        keep[i] = std::all_of(exts[i].begin(), exts[i].end(),
                              [&](std::size_t j) { return sub.contains(ext.row(j)); });
      }
      Team next = y.select(keep);
      if (next.size() == y.size()) break;
      y = std::move(next);
    }
    return y;
  }

  const Model& model_;
  const MsmOptions& opts_;
};

struct GraphShape {
  std::vector<std::string> xs, ys;
  std::optional<Formula> alpha;
  bool bidirectional = false;
};

std::optional<GraphShape> graph_shape(const Formula& phi) {
  auto parts = flatten_conjunction(phi);
  std::vector<Formula> incs, fos;
  for (const auto& p : parts) {
    if (p.is_inclusion()) {
      incs.push_back(p);
    } else if (p.is_first_order()) {
      fos.push_back(p);
    } else {
      return std::nullopt;
    }
  }
  GraphShape g;
  if (incs.size() == 1) {
    g.xs = incs[0].included();
    g.ys = incs[0].including();
  } else if (incs.size() == 2 && incs[0].included() == incs[1].including() &&
             incs[0].including() == incs[1].included()) {
    g.xs = incs[0].included();
    g.ys = incs[0].including();
    g.bidirectional = true;
  } else {
    return std::nullopt;
  }
  if (!fos.empty()) g.alpha = conjunction_of(fos);
  return g;
}

bool pure_inclusion_conjunction(const Formula& phi) {
  auto parts = flatten_conjunction(phi);
  return std::all_of(parts.begin(), parts.end(), [](const Formula& p) { return p.is_inclusion(); });
}

}  // namespace

Team msm_compose(const Model& model, const Team& team, const Formula& phi, const MsmOptions& opts) {
  check_free_vars(team, phi);
  check_team_in_model(team, model);
  return Composer(model, opts).nu(team, phi);
}

Method select_method(const Formula& phi) {
  if (pure_inclusion_conjunction(phi)) return Method::Removal;
  if (graph_shape(phi)) return Method::Graph;
  if (is_compositional(phi)) return Method::Compositional;
  if (phi.is_quantifier_free()) return Method::Game;
  return Method::Brute;
}

MsmResult msm(const Model& model, const Team& team, const Formula& phi, const MsmOptions& opts) {
  check_free_vars(team, phi);
  check_team_in_model(team, model);
  MsmResult r{team, select_method(phi), std::nullopt};
  switch (r.method) {
    case Method::Removal: {
      std::size_t rounds = 0;
      r.max_subteam = msm_removal(team, flatten_conjunction(phi), &rounds);
      r.witness = std::to_string(rounds) + " deletion rounds";
      break;
    }
    case Method::Graph: {
      auto g = *graph_shape(phi);
      r.max_subteam = msm_graph(model, team, g.xs, g.ys, g.alpha, g.bidirectional);
      r.witness = g.bidirectional ? "rows between cycles" : "rows reaching a cycle";
      break;
    }
    case Method::Compositional:
      r.max_subteam = msm_compose(model, team, phi, opts);
      break;
    case Method::Game:
      r.max_subteam = msm_game(model, team, phi);
      r.witness = "rows outside Player I's attractor";
      break;
    case Method::Brute:
      r.max_subteam = msm_brute(model, team, phi, opts);
      r.witness = "union of satisfying subteams";
      break;
  }
  return r;
}

bool mc(const Model& model, const Team& team, const Formula& phi, const MsmOptions& opts) {
  check_free_vars(team, phi);
  check_team_in_model(team, model);
  if (team.empty()) return true;
  if (select_method(phi) == Method::Brute) return satisfies_team(model, team, phi, opts.eval);
  return msm(model, team, phi, opts).max_subteam.size() == team.size();
}

}  // namespace incl
