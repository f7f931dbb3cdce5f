#include "incl/classify.hpp"

#include <algorithm>

#include "incl/errors.hpp"

namespace incl {

InclusionGraph inclusion_graph(const std::vector<Formula>& atoms) {
  InclusionGraph g;
  for (const auto& a : atoms) {
    if (!a.is_inclusion() || a.included().size() != 1) {
      throw DomainError("expected a unary inclusion atom, got '" + to_string(a) + "'");
    }
    const auto& x = a.included()[0];
    const auto& y = a.including()[0];
    g.vertices.insert(x);
    g.vertices.insert(y);
    if (x != y) g.edges.emplace(x, y);
  }
  return g;
}

std::string to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::TriviallyTrue: return "trivially true";
    case ComplexityClass::FODefinable: return "FO-definable";
    case ComplexityClass::LComplete: return "L-complete";
    case ComplexityClass::NLComplete: return "NL-complete";
    case ComplexityClass::PComplete: return "P-complete";
    case ComplexityClass::PMemberOnly: return "in P";
  }
  return "?";
}

std::string to_string(const ComplexityVerdict& v) {
  return to_string(v.cls) + " (" + v.rule + ")";
}

ComplexityVerdict classify_conjunction(const std::vector<Formula>& atoms) {
  InclusionGraph g = inclusion_graph(atoms);
  if (g.edges.empty()) return {ComplexityClass::TriviallyTrue, "no edges"};
  std::vector<std::pair<std::string, std::string>> es(g.edges.begin(), g.edges.end());
  if (es.size() == 1) return {ComplexityClass::NLComplete, "single edge"};
  if (es.size() == 2 && es[0].first == es[1].second && es[0].second == es[1].first) {
    return {ComplexityClass::NLComplete, "edge with its inverse"};
  }

  auto any_pair = [&](auto pred) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = 0; j < es.size(); ++j) {
        if (i == j) continue;
        const auto& e = es[i];
        const auto& f = es[j];
        bool inverse = e.first == f.second && e.second == f.first;
        if (!inverse && pred(e, f)) return true;
      }
    }
    return false;
  };
  if (any_pair([](const auto& e, const auto& f) { return e.second == f.second; })) {
    return {ComplexityClass::PComplete, "shared target"};
  }
  if (any_pair([](const auto& e, const auto& f) { return e.first == f.first; })) {
    return {ComplexityClass::PComplete, "shared source"};
  }
  if (any_pair([](const auto& e, const auto& f) { return e.second == f.first; })) {
    return {ComplexityClass::PComplete, "two-step path"};
  }
  return {ComplexityClass::PComplete, "disjoint edges"};
}

ComplexityVerdict classify_disjunction(const std::vector<Formula>& atoms) {
  if (atoms.empty()) throw DomainError("empty disjunction");
  InclusionGraph g = inclusion_graph(atoms);
  for (const auto& a : atoms) {
    if (a.included()[0] == a.including()[0]) {
      return {ComplexityClass::TriviallyTrue, "trivial disjunct " + to_string(a)};
    }
  }
  return {ComplexityClass::NLComplete, "no trivial disjunct"};
}

namespace {

bool unary_nontrivial(const Formula& f) {
  return f.is_inclusion() && f.included().size() == 1 && f.included()[0] != f.including()[0];
}

}  // namespace

ComplexityVerdict classify_key_restricted(const Formula& f, const std::set<std::string>& keyed) {
  auto require_key = [&](const std::string& target) {
    if (!keyed.contains(target)) {
      throw UnsupportedFragment("the referenced variable " + target + " is not among the keys");
    }
  };
  if (unary_nontrivial(f)) {
    require_key(f.including()[0]);
    return {ComplexityClass::LComplete, "single atom into a key"};
  }
  if (f.is_binary() && unary_nontrivial(f.left()) && unary_nontrivial(f.right())) {
    const auto& x = f.left().included()[0];
    const auto& y = f.right().included()[0];
    const auto& z = f.left().including()[0];
    if (z == f.right().including()[0] && x != y) {
      require_key(z);
      if (f.kind() == FormulaKind::And) {
        return {ComplexityClass::NLComplete, "two atoms into a shared key"};
      }
      return {ComplexityClass::LComplete, "disjunction into a shared key"};
    }
  }
  throw UnsupportedFragment("no key-restricted classification for '" + to_string(f) + "'");
}

ComplexityVerdict classify_formula(const Formula& f) {
  if (f.is_first_order()) return {ComplexityClass::FODefinable, "first-order"};
  auto unary = [](const Formula& g) { return g.is_inclusion() && g.included().size() == 1; };
  auto conj = flatten_conjunction(f);
  if (std::all_of(conj.begin(), conj.end(), unary)) return classify_conjunction(conj);
  auto disj = flatten_disjunction(f);
  if (std::all_of(disj.begin(), disj.end(), unary)) return classify_disjunction(disj);
  return {ComplexityClass::PMemberOnly, "general formula"};
}

bool is_weak_fragment(const Formula& f) {
  if (f.is_first_order() || f.is_inclusion()) return true;
  switch (f.kind()) {
    case FormulaKind::Or:
      return is_weak_fragment(f.left()) && is_weak_fragment(f.right());
    case FormulaKind::And:
      return (f.right().is_first_order() && is_weak_fragment(f.left())) ||
             (f.left().is_first_order() && is_weak_fragment(f.right()));
    case FormulaKind::Exists:
      return is_weak_fragment(f.body());
    default:
      return false;
  }
}

}  // namespace incl
