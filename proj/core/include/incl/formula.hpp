#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace incl {

struct Term {
  enum class Kind { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term var(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
  bool is_var() const noexcept { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { Eq, NegEq, Rel, NegRel, Inclusion, And, Or, Exists, Forall };

/// Immutable formula of inclusion logic in negation normal form. Negation is
/// only representable on equality and relational atoms.
class Formula {
 public:
  static Formula eq(Term lhs, Term rhs);
  static Formula neg_eq(Term lhs, Term rhs);
  static Formula rel(std::string name, std::vector<Term> args);
  static Formula neg_rel(std::string name, std::vector<Term> args);
  /// Throws DomainError when the arms are empty or differ in length.
  static Formula inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  FormulaKind kind() const noexcept;

  bool is_literal() const noexcept;
  bool is_inclusion() const noexcept { return kind() == FormulaKind::Inclusion; }
  bool is_binary() const noexcept;
  bool is_quantifier() const noexcept;
  /// No inclusion atom anywhere below.
  bool is_first_order() const noexcept;
  bool is_quantifier_free() const noexcept;

  // Eq / NegEq
  const Term& lhs_term() const;
  const Term& rhs_term() const;
  // Rel / NegRel
  const std::string& relation() const;
  const std::vector<Term>& args() const;
  // Inclusion
  const std::vector<std::string>& included() const;
  const std::vector<std::string>& including() const;
  // And / Or
  const Formula& left() const;
  const Formula& right() const;
  // Exists / Forall
  const std::string& bound_var() const;
  const Formula& body() const;

  /// Number of connective and atom occurrences (quantifiers included).
  std::size_t size() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Term& t);
/// Prints in the ASCII concrete syntax accepted by parse_formula.
std::string to_string(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> constants_of(const Formula& f);

/// Conjuncts of a (nested) conjunction, left to right.
std::vector<Formula> flatten_conjunction(const Formula& f);
std::vector<Formula> flatten_disjunction(const Formula& f);
/// Left-nested conjunction / disjunction; throws DomainError on empty input.
Formula conjunction_of(const std::vector<Formula>& parts);
Formula disjunction_of(const std::vector<Formula>& parts);

/// Parses the ASCII syntax:
///   variables   [a-z][a-zA-Z0-9_]*      constants  'text'
///   atoms       t=t  !t=t  R(t,..)  !R(t,..)  x1,..,xk <= y1,..,yk
///   connectives &  |   (& binds tighter)    quantifiers  E x. phi   A x. phi
/// A quantifier's scope extends as far to the right as possible.
/// Throws SyntaxError (with position) or DomainError (inclusion arity).
Formula parse_formula(std::string_view text);

/// Labelled formula tree of a quantifier-free formula. Nodes are numbered in
/// preorder; the root is node 0.
class FormulaTree {
 public:
  struct Node {
    Formula label;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };

  /// Throws UnsupportedFragment when the formula contains a quantifier.
  static FormulaTree build(const Formula& f);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t root() const noexcept { return 0; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  /// Strict ancestors of `id`, nearest first.
  std::vector<std::size_t> ancestors(std::size_t id) const;
  bool is_leaf(std::size_t id) const { return nodes_.at(id).children.empty(); }

 private:
  std::vector<Node> nodes_;
};

}  // namespace incl
