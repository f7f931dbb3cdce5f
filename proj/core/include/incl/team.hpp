#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "incl/model.hpp"
#include "incl/value.hpp"

namespace incl {

using Row = Tuple;

/// Finite variable-to-value map. Binding an already bound name overwrites it.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<std::string, Value>> bindings);

  void bind(std::string_view var, Value v);
  std::optional<Value> lookup(std::string_view var) const;
  bool binds(std::string_view var) const { return lookup(var).has_value(); }
  const std::vector<std::pair<std::string, Value>>& bindings() const noexcept { return bindings_; }

 private:
  std::vector<std::pair<std::string, Value>> bindings_;
};

/// Set of assignments over a shared, ordered variable domain. Rows are kept
/// deduplicated and sorted, so iteration order is canonical.
class Team {
 public:
  Team() = default;
  explicit Team(std::vector<std::string> vars);
  /// Throws DomainError on duplicate variables or ragged rows.
  Team(std::vector<std::string> vars, std::vector<Row> rows);

  /// Team containing only the empty assignment.
  static Team unit();

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  std::optional<std::size_t> column_of(std::string_view var) const;
  /// Throws DomainError for a variable outside the team domain.
  std::size_t column(std::string_view var) const;
  std::vector<std::size_t> columns(std::span<const std::string> vars) const;

  std::optional<std::size_t> find(const Row& r) const;
  bool contains(const Row& r) const { return find(r).has_value(); }

  Assignment assignment(std::size_t i) const;
  /// Values of row `i` on the given columns.
  Tuple project(std::size_t i, std::span<const std::size_t> cols) const;

  /// Subteam made of the rows whose flag is set.
  Team select(const std::vector<bool>& keep) const;
  Team select_mask(std::uint64_t mask) const;
  bool is_subteam_of(const Team& other) const;

  friend bool operator==(const Team&, const Team&) = default;

 private:
  std::vector<std::string> vars_;
  std::vector<Row> rows_;
};

/// Throws DomainError when the two teams have different variable domains.
Team team_union(const Team& a, const Team& b);
Team team_intersection(const Team& a, const Team& b);
Team team_difference(const Team& a, const Team& b);

/// X restricted to V; the result's variables are listed in the order of V.
Team restrict(const Team& team, std::span<const std::string> vars);

/// X[A/x]: every row extended (or overwritten) at `var` with every value of
/// `domain`. Throws DomainError for an empty domain.
Team extend_all(const Team& team, const std::string& var, std::span<const Value> domain);

bool is_key(const Team& team, std::span<const std::string> vars);

/// Lexicographic comparison induced by the model order.
std::strong_ordering lex_compare(std::span<const Value> lhs, std::span<const Value> rhs,
                                 const Model& model);

/// Checks that every value of the team lies in the model's domain.
void check_team_in_model(const Team& team, const Model& model);

}  // namespace incl
