#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "incl/value.hpp"

namespace incl {

/// Name under which the strict order of an ordered model is visible to
/// formulas: `Lt(x,y)` holds iff x precedes y.
inline constexpr std::string_view kOrderRelation = "Lt";

struct Relation {
  std::size_t arity = 0;
  std::unordered_set<Tuple, TupleHash> tuples;
};

/// Finite relational structure, optionally linearly ordered.
class Model {
 public:
  Model() = default;

  /// Throws DomainError when a tuple has the wrong arity or mentions a value
  /// outside the domain, when `order` is not a permutation of the domain, or
  /// when a relation reuses the reserved order name.
  Model(std::vector<Value> domain, std::map<std::string, Relation> relations,
        std::optional<std::vector<Value>> order = std::nullopt);

  /// Domain in canonical (textual) order.
  const std::vector<Value>& domain() const noexcept { return domain_; }
  bool contains(Value v) const { return in_domain_.contains(v); }

  const std::map<std::string, Relation>& relations() const noexcept { return relations_; }
  bool has_relation(std::string_view name) const;
  std::size_t arity(std::string_view name) const;
  bool holds(std::string_view name, std::span<const Value> args) const;

  bool ordered() const noexcept { return order_.has_value(); }
  /// Domain listed from least to greatest; throws DomainError when unordered.
  const std::vector<Value>& order() const;
  bool less(Value a, Value b) const;
  std::size_t rank(Value v) const;
  Value min() const;
  Value max() const;

 private:
  std::vector<Value> domain_;
  std::unordered_set<Value> in_domain_;
  std::map<std::string, Relation> relations_;
  std::optional<std::vector<Value>> order_;
  std::unordered_map<Value, std::size_t> ranks_;
};

/// Model with the given domain and no relations.
Model bare_model(std::vector<Value> domain);

/// Chain 0 < 1 < ... < n-1 with the given relations.
Model ordered_chain(std::size_t n, std::map<std::string, Relation> relations = {});

}  // namespace incl
