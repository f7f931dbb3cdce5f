#include "incl/reductions.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "incl/errors.hpp"

namespace incl {

Digraph::Digraph(std::vector<Value> vertices, std::vector<std::pair<Value, Value>> edges,
                 std::optional<std::pair<Value, Value>> marked)
    : vertices_(vertices.begin(), vertices.end()), marked_(marked) {
  for (const auto& [u, v] : edges) {
    if (!has_vertex(u) || !has_vertex(v)) {
      throw DomainError("edge (" + u.str() + "," + v.str() + ") leaves the vertex set");
    }
    edges_.emplace(u, v);
  }
  if (marked_ && (!has_vertex(marked_->first) || !has_vertex(marked_->second))) {
    throw DomainError("marked vertices must belong to the graph");
  }
}

std::vector<Value> Digraph::successors(Value v) const {
  std::vector<Value> out;
  for (auto it = edges_.lower_bound({v, Value()}); it != edges_.end() && it->first == v; ++it) {
    out.push_back(it->second);
  }
  return out;
}

std::vector<Value> Digraph::predecessors(Value v) const {
  std::vector<Value> out;
  for (const auto& [u, w] : edges_) {
    if (w == v) out.push_back(u);
  }
  return out;
}

bool Digraph::acyclic() const {
  std::map<Value, int> color;
  std::function<bool(Value)> dfs = [&](Value v) {
    color[v] = 1;
    for (Value w : successors(v)) {
      if (color[w] == 1) return false;
      if (color[w] == 0 && !dfs(w)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (Value v : vertices_) {
    if (color[v] == 0 && !dfs(v)) return false;
  }
  return true;
}

Model model_of(const ReductionOutput& out) {
  if (out.model) return *out.model;
  std::set<Value> seen;
  for (const auto& r : out.team.rows()) seen.insert(r.begin(), r.end());
  return bare_model({seen.begin(), seen.end()});
}

namespace {

void require_vertex(const Digraph& g, Value v) {
  if (!g.has_vertex(v)) throw DomainError("unknown vertex " + v.str());
}

Formula inc(const std::string& x, const std::string& y) { return Formula::inclusion({x}, {y}); }

}  // namespace

bool reach_solve(const Digraph& g, Value a, Value b) {
  require_vertex(g, a);
  require_vertex(g, b);
  std::set<Value> seen{a};
  std::deque<Value> queue{a};
  while (!queue.empty()) {
    Value v = queue.front();
    queue.pop_front();
    if (v == b) return true;
    for (Value w : g.successors(v)) {
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return false;
}

ReductionOutput reduce_reach(const Digraph& g, Value a, Value b, bool bidirectional) {
  require_vertex(g, a);
  require_vertex(g, b);
  if (!g.acyclic()) throw PreconditionError("reachability reduction expects an acyclic graph");
  std::vector<Row> rows;
  for (const auto& [c, d] : g.edges()) rows.push_back({d, c});
  rows.push_back({a, b});
  Formula f = bidirectional ? Formula::conj(inc("x", "y"), inc("y", "x")) : inc("x", "y");
  return {std::nullopt, Team({"x", "y"}, std::move(rows)), {a, b}, f};
}

bool detreach_solve(const Digraph& g, Value a, Value b) {
  require_vertex(g, a);
  require_vertex(g, b);
  std::set<Value> seen;
  Value v = a;
  while (v != b) {
    if (!seen.insert(v).second) return false;
    auto succ = g.successors(v);
    if (succ.size() != 1) return false;
    v = succ.front();
  }
  return true;
}

ReductionOutput reduce_detreach(const Digraph& g, Value a, Value b) {
  require_vertex(g, a);
  require_vertex(g, b);
  if (g.out_degree(a) != 1 || g.out_degree(b) != 1) {
    throw PreconditionError("a and b must have out-degree 1");
  }
  if (g.successors(b).front() != b) throw PreconditionError("b must carry a self-loop");
  std::vector<std::pair<Value, Value>> rest;
  for (const auto& e : g.edges()) {
    if (e != std::pair{b, b}) rest.push_back(e);
  }
  std::vector<Value> vs(g.vertices().begin(), g.vertices().end());
  if (!Digraph(vs, rest).acyclic()) {
    throw PreconditionError("the only cycle allowed is the self-loop on b");
  }
  std::vector<Row> rows;
  for (Value u : g.vertices()) {
    auto succ = g.successors(u);
    if (succ.size() == 1) rows.push_back({u, succ.front()});
  }
  Row query{a, g.successors(a).front()};
  return {std::nullopt, Team({"y", "x"}, std::move(rows)), query, inc("x", "y")};
}

namespace {

bool is_constant_input(const std::string& ref) { return ref == "T" || ref == "F"; }

void validate_circuit(const Circuit& c) {
  if (!c.gates.contains(c.output)) throw PreconditionError("output gate " + c.output + " is missing");
  for (const auto& [id, g] : c.gates) {
    if (id.empty() || !std::all_of(id.begin(), id.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw PreconditionError("gate ids must be decimal numbers, got '" + id + "'");
    }
    if (g.op == Gate::Op::Input) continue;
    for (const auto* ref : {&g.left, &g.right}) {
      if (!is_constant_input(*ref) && !c.gates.contains(*ref)) {
        throw PreconditionError("gate " + id + " refers to unknown gate '" + *ref + "'");
      }
    }
  }
}

}  // namespace

bool mcvp_solve(const Circuit& c, CyclePolicy policy) {
  validate_circuit(c);
  std::map<std::string, bool> value;
  auto input = [&](const std::string& ref) {
    if (ref == "T") return true;
    if (ref == "F") return false;
    return value[ref];
  };
  if (policy == CyclePolicy::Reject) {
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> eval = [&](const std::string& id) -> bool {
      if (is_constant_input(id)) return id == "T";
      int& st = state[id];
      if (st == 2) return value[id];
      if (st == 1) throw PreconditionError("circuit has a cycle through gate " + id);
      st = 1;
      const Gate& g = c.gates.at(id);
      bool v = g.value;
      if (g.op != Gate::Op::Input) {
        bool l = eval(g.left);
        bool r = eval(g.right);
        v = g.op == Gate::Op::And ? l && r : l || r;
      }
      value[id] = v;
      state[id] = 2;
      return v;
    };
    for (const auto& [id, g] : c.gates) eval(id);
    return value[c.output];
  }
  for (const auto& [id, g] : c.gates) value[id] = g.op == Gate::Op::Input && g.value;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [id, g] : c.gates) {
      bool v = value[id];
      if (g.op == Gate::Op::And) v = input(g.left) && input(g.right);
      if (g.op == Gate::Op::Or) v = input(g.left) || input(g.right);
      if (v != value[id]) {
        value[id] = v;
        changed = true;
      }
    }
  }
  return value[c.output];
}

std::string to_string(McvpVariant v) {
  switch (v) {
    case McvpVariant::XzYz: return "xz_yz";
    case McvpVariant::XyYz: return "xy_yz";
    case McvpVariant::XyXz: return "xy_xz";
  }
  return "?";
}

McvpVariant mcvp_variant_from_string(const std::string& s) {
  if (s == "xz_yz") return McvpVariant::XzYz;
  if (s == "xy_yz") return McvpVariant::XyYz;
  if (s == "xy_xz") return McvpVariant::XyXz;
  throw DomainError("unknown circuit variant '" + s + "' (expected xz_yz, xy_yz or xy_xz)");
}

ReductionOutput reduce_mcvp(const Circuit& c, McvpVariant variant) {
  validate_circuit(c);
  const Gate& out = c.gates.at(c.output);
  if (out.op == Gate::Op::Input) throw PreconditionError("the output must be an AND or OR gate");
  auto label = [&](const std::string& ref) {
    if (is_constant_input(ref)) return Value::of(ref);
    const Gate& g = c.gates.at(ref);
    if (g.op == Gate::Op::Input) return Value::of(g.value ? "T" : "F");
    return Value::of(ref);
  };
  const Value top = Value::of("T");
  std::vector<Row> rows;
  rows.push_back({Value::of(c.output), top, top});
  for (const auto& [id, g] : c.gates) {
    Value i = Value::of(id);
    if (g.op == Gate::Op::And) {
      Value ci = Value::of("c" + id);
      rows.push_back({label(g.left), i, ci});
      rows.push_back({label(g.right), ci, i});
      rows.push_back({ci, top, top});
    } else if (g.op == Gate::Op::Or) {
      rows.push_back({label(g.left), i, i});
      rows.push_back({label(g.right), i, i});
    }
  }
  Formula f = variant == McvpVariant::XzYz   ? Formula::conj(inc("x", "z"), inc("y", "z"))
              : variant == McvpVariant::XyYz ? Formula::conj(inc("x", "y"), inc("y", "z"))
                                             : Formula::conj(inc("x", "y"), inc("x", "z"));
  return {std::nullopt, Team({"x", "y", "z"}, std::move(rows)), {Value::of(c.output), top, top}, f};
}

ReductionOutput reduce_reach_keyed(const Digraph& g, Value a, Value b) {
  require_vertex(g, a);
  require_vertex(g, b);
  if (a == b) throw PreconditionError("a and b must differ");
  if (g.out_degree(b) != 0) throw PreconditionError("b must have out-degree 0");
  std::vector<Row> rows;
  for (Value i : g.vertices()) {
    if (i == b) continue;
    auto succ = g.successors(i);
    if (succ.empty() || succ.size() > 2) {
      throw PreconditionError("vertex " + i.str() + " must have out-degree 1 or 2");
    }
    rows.push_back({succ.front(), succ.back(), i});
  }
  Row query{g.successors(a).front(), g.successors(a).back(), a};
  return {std::nullopt, Team({"x", "y", "z"}, std::move(rows)), query,
          Formula::conj(inc("x", "z"), inc("y", "z"))};
}

GameOutcome game_solve(const GameInstance& inst) {
  const Digraph& g = inst.graph;
  require_vertex(g, inst.start);
  if (!g.acyclic()) throw PreconditionError("the game graph must be acyclic");
  GameOutcome out;
  std::map<Value, bool> memo;
  std::function<bool(Value)> wins = [&](Value c) -> bool {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    bool w = true;
    for (Value d : g.successors(c)) {
      auto replies = g.successors(d);
      if (std::none_of(replies.begin(), replies.end(), [&](Value e) { return wins(e); })) {
        w = false;
        break;
      }
    }
    memo[c] = w;
    return w;
  };
  for (Value v : g.vertices()) {
    if (g.successors(v).empty()) out.immediate.insert(v);
    if (wins(v)) out.winning.insert(v);
  }
  return out;
}

ReductionOutput reduce_game(const GameInstance& inst) {
  const Digraph& g = inst.graph;
  require_vertex(g, inst.start);
  if (!g.acyclic()) throw PreconditionError("the game graph must be acyclic");
  auto preds = g.predecessors(inst.start);
  if (preds.empty()) throw PreconditionError("the start vertex needs a predecessor");
  Relation e{2, {}};
  std::vector<Row> rows;
  for (const auto& [u, v] : g.edges()) {
    e.tuples.insert({u, v});
    rows.push_back({u, v});
  }
  Model model({g.vertices().begin(), g.vertices().end()}, {{"E", e}});
  Formula f = Formula::forall(
      "z", Formula::disj(Formula::neg_rel("E", {Term::var("y"), Term::var("z")}), inc("z", "x")));
  return {model, Team({"x", "y"}, std::move(rows)), {preds.front(), inst.start}, f};
}

Team msm_to_mc_lift(const Model& model, const Team& x, const Row& s, const Formula& alpha,
                    const Formula& beta, const Team& y, const MsmOptions& opts) {
  for (const auto& v : y.vars()) {
    if (x.column_of(v)) throw PreconditionError("the two teams must have disjoint domains");
  }
  check_free_vars(x, alpha);
  check_free_vars(y, beta);
  if (!x.contains(s)) throw PreconditionError("the distinguished row is not in the team");
  Team z0 = msm(model, y, beta, opts).max_subteam;
  if (z0.empty() || z0.size() == y.size()) {
    throw PreconditionError("the maximal subteam of the auxiliary team must be proper and nonempty");
  }
  Team z1 = team_difference(y, z0);
  std::vector<std::string> vars = x.vars();
  vars.insert(vars.end(), y.vars().begin(), y.vars().end());
  std::vector<Row> rows;
  auto glue = [&](const Row& a, const Row& b) {
    Row r = a;
    r.insert(r.end(), b.begin(), b.end());
    rows.push_back(std::move(r));
  };
  for (const auto& t : z1.rows()) glue(s, t);
  for (const auto& t : x.rows()) {
    if (t == s) continue;
    for (const auto& u : z0.rows()) glue(t, u);
  }
  return Team(std::move(vars), std::move(rows));
}

}  // namespace incl
