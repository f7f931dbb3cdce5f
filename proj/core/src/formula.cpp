#include "incl/formula.hpp"

#include "incl/errors.hpp"

namespace incl {

struct Formula::Node {
  FormulaKind kind;
  std::vector<Term> terms;              // Eq: {lhs, rhs}; Rel: args
  std::string name;                     // relation or bound variable
  std::vector<std::string> included;    // inclusion lhs
  std::vector<std::string> including;   // inclusion rhs
  std::optional<Formula> a;
  std::optional<Formula> b;
  bool first_order = true;
  bool quantifier_free = true;
  std::size_t size = 1;
};

namespace {

std::shared_ptr<Formula::Node> make(FormulaKind kind) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  return n;
}

[[noreturn]] void wrong_kind(const char* accessor) {
  throw std::logic_error(std::string("Formula::") + accessor + " called on the wrong node kind");
}

}  // namespace

Formula Formula::eq(Term lhs, Term rhs) {
  auto n = make(FormulaKind::Eq);
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(n);
}

Formula Formula::neg_eq(Term lhs, Term rhs) {
  auto n = make(FormulaKind::NegEq);
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(n);
}

Formula Formula::rel(std::string name, std::vector<Term> args) {
  auto n = make(FormulaKind::Rel);
  n->name = std::move(name);
  n->terms = std::move(args);
  return Formula(n);
}

Formula Formula::neg_rel(std::string name, std::vector<Term> args) {
  auto n = make(FormulaKind::NegRel);
  n->name = std::move(name);
  n->terms = std::move(args);
  return Formula(n);
}

Formula Formula::inclusion(std::vector<std::string> lhs, std::vector<std::string> rhs) {
  if (lhs.empty() || lhs.size() != rhs.size()) {
    throw DomainError("inclusion atom arms must be nonempty and of equal length (got " +
                      std::to_string(lhs.size()) + " and " + std::to_string(rhs.size()) + ")");
  }
  auto n = make(FormulaKind::Inclusion);
  n->included = std::move(lhs);
  n->including = std::move(rhs);
  n->first_order = false;
  return Formula(n);
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = make(FormulaKind::And);
  n->first_order = lhs.is_first_order() && rhs.is_first_order();
  n->quantifier_free = lhs.is_quantifier_free() && rhs.is_quantifier_free();
  n->size = 1 + lhs.size() + rhs.size();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(n);
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto n = make(FormulaKind::Or);
  n->first_order = lhs.is_first_order() && rhs.is_first_order();
  n->quantifier_free = lhs.is_quantifier_free() && rhs.is_quantifier_free();
  n->size = 1 + lhs.size() + rhs.size();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(n);
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = make(FormulaKind::Exists);
  n->name = std::move(var);
  n->first_order = body.is_first_order();
  n->quantifier_free = false;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Formula(n);
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = make(FormulaKind::Forall);
  n->name = std::move(var);
  n->first_order = body.is_first_order();
  n->quantifier_free = false;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Formula(n);
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_literal() const noexcept {
  switch (kind()) {
    case FormulaKind::Eq:
    case FormulaKind::NegEq:
    case FormulaKind::Rel:
    case FormulaKind::NegRel:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const noexcept {
  return kind() == FormulaKind::And || kind() == FormulaKind::Or;
}

bool Formula::is_quantifier() const noexcept {
  return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
}

bool Formula::is_first_order() const noexcept { return node_->first_order; }
bool Formula::is_quantifier_free() const noexcept { return node_->quantifier_free; }
std::size_t Formula::size() const noexcept { return node_->size; }

const Term& Formula::lhs_term() const {
  if (kind() != FormulaKind::Eq && kind() != FormulaKind::NegEq) wrong_kind("lhs_term");
  return node_->terms[0];
}

const Term& Formula::rhs_term() const {
  if (kind() != FormulaKind::Eq && kind() != FormulaKind::NegEq) wrong_kind("rhs_term");
  return node_->terms[1];
}

const std::string& Formula::relation() const {
  if (kind() != FormulaKind::Rel && kind() != FormulaKind::NegRel) wrong_kind("relation");
  return node_->name;
}

const std::vector<Term>& Formula::args() const {
  if (kind() != FormulaKind::Rel && kind() != FormulaKind::NegRel) wrong_kind("args");
  return node_->terms;
}

const std::vector<std::string>& Formula::included() const {
  if (kind() != FormulaKind::Inclusion) wrong_kind("included");
  return node_->included;
}

const std::vector<std::string>& Formula::including() const {
  if (kind() != FormulaKind::Inclusion) wrong_kind("including");
  return node_->including;
}

const Formula& Formula::left() const {
  if (!is_binary()) wrong_kind("left");
  return *node_->a;
}

const Formula& Formula::right() const {
  if (!is_binary()) wrong_kind("right");
  return *node_->b;
}

const std::string& Formula::bound_var() const {
  if (!is_quantifier()) wrong_kind("bound_var");
  return node_->name;
}

const Formula& Formula::body() const {
  if (!is_quantifier()) wrong_kind("body");
  return *node_->a;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case FormulaKind::Eq:
    case FormulaKind::NegEq:
    case FormulaKind::Rel:
    case FormulaKind::NegRel:
      return x.name == y.name && x.terms == y.terms;
    case FormulaKind::Inclusion:
      return x.included == y.included && x.including == y.including;
    case FormulaKind::And:
    case FormulaKind::Or:
      return *x.a == *y.a && *x.b == *y.b;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return x.name == y.name && *x.a == *y.a;
  }
  return false;
}

std::string to_string(const Term& t) {
  return t.is_var() ? t.name : "'" + t.name + "'";
}

namespace {

std::string join_terms(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ",";
    out += to_string(ts[i]);
  }
  return out;
}

std::string join_vars(const std::vector<std::string>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += vs[i];
  }
  return out;
}

// Precedence levels: 0 = disjunction, 1 = conjunction, 2 = atom / parenthesised.
// Quantifiers extend maximally to the right, so they are always wrapped when
// they appear as the operand of a connective.
std::string print(const Formula& f, int context) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return to_string(f.lhs_term()) + "=" + to_string(f.rhs_term());
    case FormulaKind::NegEq:
      return "!" + to_string(f.lhs_term()) + "=" + to_string(f.rhs_term());
    case FormulaKind::Rel:
      return f.relation() + "(" + join_terms(f.args()) + ")";
    case FormulaKind::NegRel:
      return "!" + f.relation() + "(" + join_terms(f.args()) + ")";
    case FormulaKind::Inclusion:
      return join_vars(f.included()) + " <= " + join_vars(f.including());
    case FormulaKind::And: {
      // Conjunction is left-nested by the parser, so a conjunction on the
      // right needs explicit parentheses to round-trip.
      std::string s = print(f.left(), 1) + " & " + print(f.right(), 2);
      return context > 1 ? "(" + s + ")" : s;
    }
    case FormulaKind::Or: {
      bool quantified = f.left().kind() == FormulaKind::Exists || f.left().kind() == FormulaKind::Forall;
      std::string s = print(f.left(), quantified ? 1 : 0) + " | " + print(f.right(), 1);
      return context > 0 ? "(" + s + ")" : s;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::string q = f.kind() == FormulaKind::Exists ? "E " : "A ";
      std::string s = q + f.bound_var() + ". " + print(f.body(), 0);
      return context > 0 ? "(" + s + ")" : s;
    }
  }
  return {};
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (!bound.contains(v)) out.insert(v);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::NegEq:
      if (f.lhs_term().is_var()) add(f.lhs_term().name);
      if (f.rhs_term().is_var()) add(f.rhs_term().name);
      return;
    case FormulaKind::Rel:
    case FormulaKind::NegRel:
      for (const auto& t : f.args()) {
        if (t.is_var()) add(t.name);
      }
      return;
    case FormulaKind::Inclusion:
      for (const auto& v : f.included()) add(v);
      for (const auto& v : f.including()) add(v);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f.bound_var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      return;
    }
  }
}

void collect_constants(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::NegEq:
      if (!f.lhs_term().is_var()) out.insert(f.lhs_term().name);
      if (!f.rhs_term().is_var()) out.insert(f.rhs_term().name);
      return;
    case FormulaKind::Rel:
    case FormulaKind::NegRel:
      for (const auto& t : f.args()) {
        if (!t.is_var()) out.insert(t.name);
      }
      return;
    case FormulaKind::Inclusion:
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_constants(f.left(), out);
      collect_constants(f.right(), out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      collect_constants(f.body(), out);
      return;
  }
}

void flatten(const Formula& f, FormulaKind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    flatten(f.left(), kind, out);
    flatten(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::string to_string(const Formula& f) { return print(f, 0); }

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  collect_constants(f, out);
  return out;
}

std::vector<Formula> flatten_conjunction(const Formula& f) {
  std::vector<Formula> out;
  flatten(f, FormulaKind::And, out);
  return out;
}

std::vector<Formula> flatten_disjunction(const Formula& f) {
  std::vector<Formula> out;
  flatten(f, FormulaKind::Or, out);
  return out;
}

Formula conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) throw DomainError("empty conjunction");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) throw DomainError("empty disjunction");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

}  // namespace incl
