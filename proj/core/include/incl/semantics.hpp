#pragma once

#include <cstddef>

#include "incl/formula.hpp"
#include "incl/model.hpp"
#include "incl/team.hpp"

namespace incl {

/// Size guards for the exhaustive parts of the team evaluator.
struct EvalLimits {
  /// Largest team on which a disjunction's covers are enumerated.
  std::size_t max_cover_rows = 12;
  /// Largest extended team X[A/x] whose subteams are enumerated for E x.
  std::size_t max_exists_rows = 16;
  /// Search existential witnesses as raw choice functions X -> P(A)\{0}
  /// instead of subteams of X[A/x]. Same semantics, larger search space.
  bool exists_via_choice_functions = false;
};

/// Classical satisfaction of a first-order formula. Throws DomainError on an
/// unbound variable, an unknown relation or a constant outside the domain,
/// and UnsupportedFragment when the formula contains an inclusion atom.
bool satisfies_tarski(const Model& model, const Assignment& s, const Formula& alpha);

/// Tarski satisfaction at row `i` of `team`.
bool satisfies_row(const Model& model, const Team& team, std::size_t i, const Formula& alpha);

/// Rows of `team` satisfying the first-order formula, as flags.
std::vector<bool> satisfying_rows(const Model& model, const Team& team, const Formula& alpha);

/// Team satisfaction under lax semantics, by exhaustive search. Throws
/// GuardExceeded when a search exceeds `limits`, DomainError when a free
/// variable is outside the team domain.
bool satisfies_team(const Model& model, const Team& team, const Formula& phi,
                    const EvalLimits& limits = {});

/// Throws DomainError unless free_vars(phi) is contained in vars(team).
void check_free_vars(const Team& team, const Formula& phi);

}  // namespace incl
