#include "incl/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "incl/errors.hpp"

namespace incl {
namespace {

class Env {
 public:
  explicit Env(const Assignment& s) : frames_(s.bindings()) {}

  Value get(const std::string& var) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      if (it->first == var) return it->second;
    }
    throw DomainError("unbound variable " + var);
  }
  void push(const std::string& var, Value v) { frames_.emplace_back(var, v); }
  void pop() { frames_.pop_back(); }

 private:
  std::vector<std::pair<std::string, Value>> frames_;
};

Value constant_value(const Model& model, const std::string& name) {
  Value v = Value::of(name);
  if (!model.contains(v)) throw DomainError("constant '" + name + "' is not in the domain");
  return v;
}

Value eval_term(const Model& model, const Env& env, const Term& t) {
  return t.is_var() ? env.get(t.name) : constant_value(model, t.name);
}

bool eval_relation(const Model& model, const Env& env, const Formula& f) {
  if (!model.has_relation(f.relation())) throw DomainError("unknown relation " + f.relation());
  if (model.arity(f.relation()) != f.args().size()) {
    throw DomainError("relation " + f.relation() + " used with arity " +
                      std::to_string(f.args().size()));
  }
  Tuple args;
  args.reserve(f.args().size());
  for (const auto& t : f.args()) args.push_back(eval_term(model, env, t));
  return model.holds(f.relation(), args);
}

bool tarski(const Model& model, Env& env, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return eval_term(model, env, f.lhs_term()) == eval_term(model, env, f.rhs_term());
    case FormulaKind::NegEq:
      return eval_term(model, env, f.lhs_term()) != eval_term(model, env, f.rhs_term());
    case FormulaKind::Rel:
      return eval_relation(model, env, f);
    case FormulaKind::NegRel:
      return !eval_relation(model, env, f);
    case FormulaKind::Inclusion:
      throw UnsupportedFragment("inclusion atoms have no Tarski semantics");
    case FormulaKind::And:
      return tarski(model, env, f.left()) && tarski(model, env, f.right());
    case FormulaKind::Or:
      return tarski(model, env, f.left()) || tarski(model, env, f.right());
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool want = f.kind() == FormulaKind::Exists;
      for (Value a : model.domain()) {
        env.push(f.bound_var(), a);
        bool r = tarski(model, env, f.body());
        env.pop();
        if (r == want) return want;
      }
      return !want;
    }
  }
  return false;
}

class TeamEvaluator {
 public:
  TeamEvaluator(const Model& model, const EvalLimits& limits) : model_(model), limits_(limits) {}

  bool sat(const Team& x, const Formula& f) {
    if (x.empty()) return true;
    if (f.is_first_order()) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!satisfies_row(model_, x, i, f)) return false;
      }
      return true;
    }
    switch (f.kind()) {
      case FormulaKind::Inclusion:
        return inclusion(x, f);
      case FormulaKind::And:
        return sat(x, f.left()) && sat(x, f.right());
      case FormulaKind::Or:
        return disjunction(x, f);
      case FormulaKind::Exists:
        return limits_.exists_via_choice_functions ? exists_choice(x, f) : exists(x, f);
      case FormulaKind::Forall:
        return sat(extend_all(x, f.bound_var(), model_.domain()), f.body());
      default:
        return false;
    }
  }

 private:
  static bool inclusion(const Team& x, const Formula& f) {
    auto lc = x.columns(f.included());
    auto rc = x.columns(f.including());
    std::unordered_set<Tuple, TupleHash> targets;
    for (std::size_t i = 0; i < x.size(); ++i) targets.insert(x.project(i, rc));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!targets.contains(x.project(i, lc))) return false;
    }
    return true;
  }

  // Every cover Y u Z = X: Y ranges over subteams, Z over subteams containing
  // X \ Y. Satisfaction of each half is memoised per subteam.
  bool disjunction(const Team& x, const Formula& f) {
    std::size_t n = x.size();
    if (n > limits_.max_cover_rows) {
      throw GuardExceeded("disjunction over " + std::to_string(n) + " rows exceeds the cover guard of " +
                          std::to_string(limits_.max_cover_rows));
    }
    using Mask = std::uint64_t;
    const Mask full = (Mask{1} << n) - 1;
    std::vector<signed char> left(full + 1, -1), right(full + 1, -1);
    auto holds = [&](std::vector<signed char>& memo, Mask m, const Formula& g) {
      if (memo[m] < 0) memo[m] = sat(x.select_mask(m), g) ? 1 : 0;
      return memo[m] == 1;
    };
    for (Mask y = full;; y = (y - 1) & full) {
      if (holds(left, y, f.left())) {
        Mask rest = full & ~y;
        for (Mask z = y;; z = (z - 1) & y) {
          if (holds(right, rest | z, f.right())) return true;
          if (z == 0) break;
        }
      }
      if (y == 0) break;
    }
    return false;
  }

  // Subteams Y of X[A/x] in which every row of X has at least one extension.
  bool exists(const Team& x, const Formula& f) {
    const auto& var = f.bound_var();
    Team ext = extend_all(x, var, model_.domain());
    std::size_t m = ext.size();
    if (m > limits_.max_exists_rows) {
      throw GuardExceeded("existential search over " + std::to_string(m) +
                          " extended rows exceeds the guard of " +
                          std::to_string(limits_.max_exists_rows));
    }
    std::vector<std::uint64_t> covers(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (Value a : model_.domain()) {
        Assignment s = x.assignment(i);
        s.bind(var, a);
        Row r;
        for (const auto& v : ext.vars()) r.push_back(*s.lookup(v));
        auto j = ext.find(r);
        covers[i] |= std::uint64_t{1} << *j;
      }
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      bool covering = std::all_of(covers.begin(), covers.end(),
                                  [&](std::uint64_t c) { return (c & mask) != 0; });
      if (covering && sat(ext.select_mask(mask), f.body())) return true;
    }
    return false;
  }

  // Raw choice functions F : X -> nonempty subsets of A.
  bool exists_choice(const Team& x, const Formula& f) {
    const auto& dom = model_.domain();
    std::size_t n = x.size();
    std::size_t choices = (std::size_t{1} << dom.size()) - 1;
    double space = 1;
    for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(choices);
    if (space > 1e6) throw GuardExceeded("choice-function search space too large");
    std::vector<std::size_t> pick(n, 1);
    while (true) {
      std::vector<std::string> vars = x.vars();
      if (!x.column_of(f.bound_var())) vars.push_back(f.bound_var());
      std::vector<Row> rows;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < dom.size(); ++a) {
          if (!(pick[i] >> a & 1)) continue;
          Assignment s = x.assignment(i);
          s.bind(f.bound_var(), dom[a]);
          Row r;
          for (const auto& v : vars) r.push_back(*s.lookup(v));
          rows.push_back(std::move(r));
        }
      }
      if (sat(Team(vars, std::move(rows)), f.body())) return true;
      std::size_t i = 0;
      while (i < n && pick[i] == choices) pick[i++] = 1;
      if (i == n) return false;
      ++pick[i];
    }
  }

  const Model& model_;
  const EvalLimits& limits_;
};

}  // namespace

bool satisfies_tarski(const Model& model, const Assignment& s, const Formula& alpha) {
  Env env(s);
  return tarski(model, env, alpha);
}

bool satisfies_row(const Model& model, const Team& team, std::size_t i, const Formula& alpha) {
  return satisfies_tarski(model, team.assignment(i), alpha);
}

std::vector<bool> satisfying_rows(const Model& model, const Team& team, const Formula& alpha) {
  std::vector<bool> out(team.size());
  for (std::size_t i = 0; i < team.size(); ++i) out[i] = satisfies_row(model, team, i, alpha);
  return out;
}

void check_free_vars(const Team& team, const Formula& phi) {
  for (const auto& v : free_vars(phi)) {
    if (!team.column_of(v)) {
      throw DomainError("free variable " + v + " is not in the team domain");
    }
  }
}

bool satisfies_team(const Model& model, const Team& team, const Formula& phi,
                    const EvalLimits& limits) {
  check_free_vars(team, phi);
  TeamEvaluator ev(model, limits);
  return ev.sat(team, phi);
}

}  // namespace incl
