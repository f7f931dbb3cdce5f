#include "incl/team.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "incl/errors.hpp"

namespace incl {

Assignment::Assignment(std::initializer_list<std::pair<std::string, Value>> bindings) {
  for (const auto& [var, v] : bindings) bind(var, v);
}

void Assignment::bind(std::string_view var, Value v) {
  for (auto& [name, value] : bindings_) {
    if (name == var) {
      value = v;
      return;
    }
  }
  bindings_.emplace_back(std::string(var), v);
}

std::optional<Value> Assignment::lookup(std::string_view var) const {
  for (const auto& [name, value] : bindings_) {
    if (name == var) return value;
  }
  return std::nullopt;
}

namespace {

void check_distinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) throw DomainError("duplicate variable '" + v + "' in team domain");
  }
}

void canonicalize(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

void require_same_domain(const Team& a, const Team& b) {
  if (a.vars() != b.vars()) throw DomainError("team domains differ");
}

}  // namespace

Team::Team(std::vector<std::string> vars) : vars_(std::move(vars)) { check_distinct(vars_); }

Team::Team(std::vector<std::string> vars, std::vector<Row> rows)
    : vars_(std::move(vars)), rows_(std::move(rows)) {
  check_distinct(vars_);
  for (const auto& r : rows_) {
    if (r.size() != vars_.size()) {
      throw DomainError("row " + to_string(r) + " does not match the team domain of " +
                        std::to_string(vars_.size()) + " variables");
    }
  }
  canonicalize(rows_);
}

Team Team::unit() { return Team({}, {Row{}}); }

std::optional<std::size_t> Team::column_of(std::string_view var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == var) return i;
  }
  return std::nullopt;
}

std::size_t Team::column(std::string_view var) const {
  if (auto c = column_of(var)) return *c;
  throw DomainError("variable '" + std::string(var) + "' is not in the team domain");
}

std::vector<std::size_t> Team::columns(std::span<const std::string> vars) const {
  std::vector<std::size_t> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(column(v));
  return out;
}

std::optional<std::size_t> Team::find(const Row& r) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), r);
  if (it == rows_.end() || *it != r) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

Assignment Team::assignment(std::size_t i) const {
  Assignment s;
  const Row& r = rows_.at(i);
  for (std::size_t c = 0; c < vars_.size(); ++c) s.bind(vars_[c], r[c]);
  return s;
}

Tuple Team::project(std::size_t i, std::span<const std::size_t> cols) const {
  Tuple out;
  out.reserve(cols.size());
  for (auto c : cols) out.push_back(rows_[i][c]);
  return out;
}

Team Team::select(const std::vector<bool>& keep) const {
  Team out(vars_);
  for (std::size_t i = 0; i < rows_.size() && i < keep.size(); ++i) {
    if (keep[i]) out.rows_.push_back(rows_[i]);
  }
  return out;
}

Team Team::select_mask(std::uint64_t mask) const {
  Team out(vars_);
  for (std::size_t i = 0; i < rows_.size() && i < 64; ++i) {
    if (mask >> i & 1U) out.rows_.push_back(rows_[i]);
  }
  return out;
}

bool Team::is_subteam_of(const Team& other) const {
  if (vars_ != other.vars_) return false;
  return std::includes(other.rows_.begin(), other.rows_.end(), rows_.begin(), rows_.end());
}

Team team_union(const Team& a, const Team& b) {
  require_same_domain(a, b);
  std::vector<Row> rows;
  std::set_union(a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(),
                 std::back_inserter(rows));
  return Team(a.vars(), std::move(rows));
}

Team team_intersection(const Team& a, const Team& b) {
  require_same_domain(a, b);
  std::vector<Row> rows;
  std::set_intersection(a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(),
                        std::back_inserter(rows));
  return Team(a.vars(), std::move(rows));
}

Team team_difference(const Team& a, const Team& b) {
  require_same_domain(a, b);
  std::vector<Row> rows;
  std::set_difference(a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(),
                      std::back_inserter(rows));
  return Team(a.vars(), std::move(rows));
}

Team restrict(const Team& team, std::span<const std::string> vars) {
  auto cols = team.columns(vars);
  std::vector<Row> rows;
  rows.reserve(team.size());
  for (std::size_t i = 0; i < team.size(); ++i) rows.push_back(team.project(i, cols));
  return Team(std::vector<std::string>(vars.begin(), vars.end()), std::move(rows));
}

Team extend_all(const Team& team, const std::string& var, std::span<const Value> domain) {
  if (domain.empty()) throw DomainError("cannot extend a team over an empty domain");
  std::vector<std::string> vars = team.vars();
  auto col = team.column_of(var);
  if (!col) vars.push_back(var);
  std::vector<Row> rows;
  rows.reserve(team.size() * domain.size());
  for (const auto& r : team.rows()) {
    for (Value a : domain) {
      Row ext = r;
      if (col) {
        ext[*col] = a;
      } else {
        ext.push_back(a);
      }
      rows.push_back(std::move(ext));
    }
  }
  return Team(std::move(vars), std::move(rows));
}

bool is_key(const Team& team, std::span<const std::string> vars) {
  auto cols = team.columns(vars);
  std::unordered_set<Tuple, TupleHash> seen;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (!seen.insert(team.project(i, cols)).second) return false;
  }
  return true;
}

std::strong_ordering lex_compare(std::span<const Value> lhs, std::span<const Value> rhs,
                                 const Model& model) {
  if (lhs.size() != rhs.size()) throw DomainError("lexicographic comparison of tuples of different length");
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    auto l = model.rank(lhs[i]);
    auto r = model.rank(rhs[i]);
    if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

void check_team_in_model(const Team& team, const Model& model) {
  for (const auto& r : team.rows()) {
    for (Value v : r) {
      if (!model.contains(v)) {
        throw DomainError("team value '" + v.str() + "' is not in the model domain");
      }
    }
  }
}

}  // namespace incl
