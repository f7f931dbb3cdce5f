#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "incl/formula.hpp"
#include "incl/model.hpp"
#include "incl/semantics.hpp"
#include "incl/team.hpp"

namespace incl {

enum class Method { Brute, Graph, Removal, Compositional, Game };

std::string to_string(Method m);

struct MsmOptions {
  /// msm_brute refuses teams larger than this.
  std::size_t brute_max_rows = 12;
  /// msm_brute refuses quantified formulas over larger domains.
  std::size_t brute_max_domain = 6;
  EvalLimits eval;
};

struct MsmResult {
  Team max_subteam;
  Method method;
  std::optional<std::string> witness;
};

/// Union of all satisfying subteams, by enumeration. Throws GuardExceeded
/// beyond the configured size guards.
Team msm_brute(const Model& model, const Team& team, const Formula& phi,
               const MsmOptions& opts = {});

/// Maximal subteam for x <= y & alpha (or x <= y & y <= x & alpha when
/// `bidirectional`) through the row graph s -> s' iff s(x) = s'(y) and both
/// rows satisfy alpha. Throws UnsupportedFragment when alpha is not
/// first-order.
Team msm_graph(const Model& model, const Team& team, const std::vector<std::string>& xs,
               const std::vector<std::string>& ys, const std::optional<Formula>& alpha,
               bool bidirectional);

/// Greatest-fixpoint deletion for a conjunction of inclusion atoms. All rows
/// lacking a witness for some atom are deleted together in each round.
Team msm_removal(const Team& team, const std::vector<Formula>& atoms,
                 std::size_t* rounds = nullptr);
Team msm_removal(const Model& model, const Team& team, const std::vector<Formula>& atoms);

/// Compositional computation: first-order parts by flatness, union over
/// disjunctions, first-order conjuncts applied first, existential and
/// universal quantifiers through the extended team. Other conjunctions fall
/// back to the game (quantifier-free) or to brute force.
Team msm_compose(const Model& model, const Team& team, const Formula& phi,
                 const MsmOptions& opts = {});

/// Rows from which Player II wins the safety game.
Team msm_game(const Model& model, const Team& team, const Formula& phi);

/// True when msm_compose handles `phi` without any fallback.
bool is_compositional(const Formula& phi);

/// Method msm() would pick for `phi`.
Method select_method(const Formula& phi);

/// Maximal satisfying subteam through the first applicable method, in the
/// order Removal, Graph, Compositional, Game, Brute.
MsmResult msm(const Model& model, const Team& team, const Formula& phi,
              const MsmOptions& opts = {});

/// Team satisfaction via the maximal subteam where a polynomial method applies,
/// falling back to the reference evaluator otherwise.
bool mc(const Model& model, const Team& team, const Formula& phi, const MsmOptions& opts = {});

}  // namespace incl
