#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "incl/formula.hpp"
#include "incl/model.hpp"
#include "incl/team.hpp"

namespace incl {

/// Term of a TC application: a variable, a constant, or the least / greatest
/// element of the model order.
struct TcTerm {
  enum class Kind { Variable, Constant, Min, Max };

  Kind kind = Kind::Variable;
  std::string name;

  static TcTerm var(std::string n) { return {Kind::Variable, std::move(n)}; }
  static TcTerm constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static TcTerm min() { return {Kind::Min, "min"}; }
  static TcTerm max() { return {Kind::Max, "max"}; }

  friend bool operator==(const TcTerm&, const TcTerm&) = default;
};

/// Either a first-order formula or [TC_{xs,ys} body](from, to). Bodies may
/// themselves be TC applications.
class TcFormula {
 public:
  static TcFormula first_order(Formula f);
  /// Throws DomainError when the tuples differ in length or xs, ys repeat a variable.
  static TcFormula tc(std::vector<std::string> xs, std::vector<std::string> ys, TcFormula body,
                      std::vector<TcTerm> from, std::vector<TcTerm> to);

  bool is_first_order() const noexcept { return !app_; }
  const Formula& formula() const;

  const std::vector<std::string>& xs() const;
  const std::vector<std::string>& ys() const;
  const TcFormula& body() const;
  const std::vector<TcTerm>& from() const;
  const std::vector<TcTerm>& to() const;

  struct App;

 private:
  std::shared_ptr<const Formula> fo_;
  std::shared_ptr<const App> app_;
};

std::string to_string(const TcFormula& f);

/// Parses `TC[x1,..,xk,y1,..,yk]{ body }(t1,..,tk,u1,..,uk)` where the body is
/// a first-order formula or another TC application and terms are variables,
/// quoted constants, `min` or `max`; anything else is a first-order formula.
TcFormula parse_tc(std::string_view text);

using TupleSet = std::set<Tuple>;

/// Least transitive relation containing `r`, for 2k-ary tuples read as pairs
/// of k-tuples. Throws DomainError on odd or ragged tuples.
TupleSet transitive_closure(const TupleSet& r);

/// Truth of a TC formula at an assignment. `min`/`max` need an ordered model.
bool tc_eval(const Model& model, const Assignment& s, const TcFormula& phi);

/// Sentence of the weak fragment equivalent, on finite ordered models, to
/// [TC_{xs,ys} alpha](min, max) with alpha first-order. Throws
/// UnsupportedFragment for any other shape.
Formula translate_tc(const TcFormula& phi);

/// Truth of a sentence of inclusion logic: the unit team satisfies it.
bool sentence_holds(const Model& model, const Formula& sentence);

/// The four single-step bodies used by the equivalence harness.
std::vector<TcFormula> tc_templates();

struct TcHarnessReport {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t not_weak = 0;
  std::vector<std::string> details;
};

/// Random ordered models with a binary relation E, sizes 1..n, random template;
/// compares tc_eval with the translated sentence. Throws GuardExceeded for
/// n above 8. `jobs` > 1 spreads trials over threads; results do not depend
/// on it.
TcHarnessReport tc_equiv_harness(std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t jobs = 1);

/// Every relation E on every chain of size 1..n, for every template.
TcHarnessReport tc_equiv_exhaustive(std::size_t n);

}  // namespace incl
