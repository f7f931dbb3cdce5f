#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "incl/formula.hpp"

namespace incl {

/// Directed graph on variables with an edge (x,y) for every atom x <= y, x != y.
struct InclusionGraph {
  std::set<std::string> vertices;
  std::set<std::pair<std::string, std::string>> edges;
};

/// Throws DomainError unless every formula is a unary inclusion atom.
InclusionGraph inclusion_graph(const std::vector<Formula>& atoms);

enum class ComplexityClass { TriviallyTrue, FODefinable, LComplete, NLComplete, PComplete, PMemberOnly };

std::string to_string(ComplexityClass c);

struct ComplexityVerdict {
  ComplexityClass cls;
  std::string rule;

  friend bool operator==(const ComplexityVerdict&, const ComplexityVerdict&) = default;
};

/// "P-complete (shared target)" style rendering.
std::string to_string(const ComplexityVerdict& v);

/// Complexity of the maximal subteam problem for the conjunction of `atoms`.
ComplexityVerdict classify_conjunction(const std::vector<Formula>& atoms);

/// Complexity of the maximal subteam problem for the disjunction of `atoms`.
/// Throws DomainError on an empty list.
ComplexityVerdict classify_disjunction(const std::vector<Formula>& atoms);

/// Complexity over teams on which `keyed` is promised to be a key. Recognises
/// x <= y, x <= z & y <= z and x <= z | y <= z up to renaming; anything else
/// throws UnsupportedFragment.
ComplexityVerdict classify_key_restricted(const Formula& f, const std::set<std::string>& keyed);

/// Best available verdict for an arbitrary formula: first-order formulas are
/// FO-definable, pure unary conjunctions and disjunctions go through the
/// classifiers above, everything else is only known to be in P.
ComplexityVerdict classify_formula(const Formula& f);

/// Membership in the weak fragment: first-order formulas, inclusion atoms,
/// disjunction, conjunction with a first-order conjunct, and existential
/// quantification.
bool is_weak_fragment(const Formula& f);

}  // namespace incl
