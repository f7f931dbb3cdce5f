#pragma once

#include <istream>
#include <string>
#include <vector>

#include "incl/formula.hpp"
#include "incl/team.hpp"

namespace incl {

/// The unique subset repair of a single-relation database under unary
/// inclusion dependencies. Throws DomainError for a non-unary dependency.
Team subset_repair(const Team& db, const std::vector<Formula>& deps);

/// Whether `candidate` is the subset repair of `db`. Throws PreconditionError
/// unless candidate is a subset of db.
bool is_subset_repair(const Team& candidate, const Team& db, const std::vector<Formula>& deps);

/// Whether the tuple holds in every repair, i.e. belongs to the subset repair.
/// Throws DomainError when the tuple's arity differs from the database's.
bool consistent_answer_atomic(const Team& db, const std::vector<Formula>& deps, const Row& tuple);

/// CSV with a header row naming the columns; no quoting.
Team read_csv_team(std::istream& in);

/// One `x <= y` per line; blank lines and lines starting with '#' are skipped.
std::vector<Formula> read_dependencies(std::istream& in);

}  // namespace incl
