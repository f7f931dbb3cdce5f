#include "incl/tclogic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <thread>

#include "incl/classify.hpp"
#include "incl/errors.hpp"
#include "incl/msm.hpp"
#include "incl/semantics.hpp"

namespace incl {

struct TcFormula::App {
  std::vector<std::string> xs;
  std::vector<std::string> ys;
  TcFormula body;
  std::vector<TcTerm> from;
  std::vector<TcTerm> to;
};

TcFormula TcFormula::first_order(Formula f) {
  TcFormula t;
  t.fo_ = std::make_shared<const Formula>(std::move(f));
  return t;
}

TcFormula TcFormula::tc(std::vector<std::string> xs, std::vector<std::string> ys, TcFormula body,
                        std::vector<TcTerm> from, std::vector<TcTerm> to) {
  const std::size_t k = xs.size();
  if (k == 0 || ys.size() != k || from.size() != k || to.size() != k) {
    throw DomainError("TC tuples must be nonempty and of equal length");
  }
  std::set<std::string> seen;
  for (const auto& v : xs) seen.insert(v);
  for (const auto& v : ys) seen.insert(v);
  if (seen.size() != 2 * k) throw DomainError("TC variables must be pairwise distinct");
  TcFormula t;
  t.app_ = std::make_shared<const App>(
      App{std::move(xs), std::move(ys), std::move(body), std::move(from), std::move(to)});
  return t;
}

namespace {

[[noreturn]] void not_tc(const char* what) {
  throw std::logic_error(std::string("TcFormula::") + what + " called on a first-order formula");
}

}  // namespace

const Formula& TcFormula::formula() const {
  if (!fo_) throw std::logic_error("TcFormula::formula called on a TC application");
  return *fo_;
}
const std::vector<std::string>& TcFormula::xs() const {
  if (!app_) not_tc("xs");
  return app_->xs;
}
const std::vector<std::string>& TcFormula::ys() const {
  if (!app_) not_tc("ys");
  return app_->ys;
}
const TcFormula& TcFormula::body() const {
  if (!app_) not_tc("body");
  return app_->body;
}
const std::vector<TcTerm>& TcFormula::from() const {
  if (!app_) not_tc("from");
  return app_->from;
}
const std::vector<TcTerm>& TcFormula::to() const {
  if (!app_) not_tc("to");
  return app_->to;
}

namespace {

std::string term_text(const TcTerm& t) {
  switch (t.kind) {
    case TcTerm::Kind::Variable: return t.name;
    case TcTerm::Kind::Constant: return "'" + t.name + "'";
    case TcTerm::Kind::Min: return "min";
    case TcTerm::Kind::Max: return "max";
  }
  return "?";
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F render) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += render(items[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const TcFormula& f) {
  if (f.is_first_order()) return to_string(f.formula());
  auto ident = [](const std::string& s) { return s; };
  std::vector<std::string> vars = f.xs();
  vars.insert(vars.end(), f.ys().begin(), f.ys().end());
  std::vector<TcTerm> terms = f.from();
  terms.insert(terms.end(), f.to().begin(), f.to().end());
  return "TC[" + join(vars, ident) + "]{" + to_string(f.body()) + "}(" + join(terms, term_text) +
         ")";
}

namespace {

class TcParser {
 public:
  TcParser(std::string_view text, std::size_t offset) : s_(text), offset_(offset) {}

  TcFormula parse() {
    skip();
    if (!at_tc()) {
      try {
        return TcFormula::first_order(parse_formula(s_));
      } catch (const SyntaxError& e) {
        throw SyntaxError(strip_position(e.what()), offset_ + e.position());
      }
    }
    i_ += 2;
    expect('[');
    std::vector<std::string> vars;
    do {
      vars.push_back(identifier());
    } while (accept(','));
    expect(']');
    skip();
    if (i_ >= s_.size() || s_[i_] != '{') fail("expected '{'");
    std::size_t open = i_;
    int depth = 0;
    std::size_t close = open;
    for (; close < s_.size(); ++close) {
      if (s_[close] == '{') ++depth;
      if (s_[close] == '}' && --depth == 0) break;
    }
    if (close == s_.size()) fail("unbalanced '{'");
    TcFormula body = TcParser(s_.substr(open + 1, close - open - 1), offset_ + open + 1).parse();
    i_ = close + 1;
    expect('(');
    std::vector<TcTerm> terms;
    do {
      terms.push_back(term());
    } while (accept(','));
    expect(')');
    skip();
    if (i_ != s_.size()) fail("trailing input");
    if (vars.size() % 2 != 0 || vars.size() != terms.size()) {
      fail("TC needs 2k variables and 2k terms");
    }
    const std::size_t k = vars.size() / 2;
    return TcFormula::tc({vars.begin(), vars.begin() + k}, {vars.begin() + k, vars.end()},
                         std::move(body), {terms.begin(), terms.begin() + k},
                         {terms.begin() + k, terms.end()});
  }

 private:
  static std::string strip_position(const std::string& what) {
    auto at = what.rfind(" at position ");
    return at == std::string::npos ? what : what.substr(0, at);
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, offset_ + i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool at_tc() const {
    return s_.substr(i_, 3) == "TC[" || (s_.substr(i_, 2) == "TC" && i_ + 2 < s_.size() &&
                                         std::isspace(static_cast<unsigned char>(s_[i_ + 2])));
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip();
    std::size_t start = i_;
    if (i_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[i_]))) fail("expected a variable");
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  TcTerm term() {
    skip();
    if (i_ < s_.size() && s_[i_] == '\'') {
      auto close = s_.find('\'', i_ + 1);
      if (close == std::string_view::npos || close == i_ + 1) fail("bad constant");
      TcTerm t = TcTerm::constant(std::string(s_.substr(i_ + 1, close - i_ - 1)));
      i_ = close + 1;
      return t;
    }
    std::string id = identifier();
    if (id == "min") return TcTerm::min();
    if (id == "max") return TcTerm::max();
    return TcTerm::var(id);
  }

  std::string_view s_;
  std::size_t offset_;
  std::size_t i_ = 0;
};

}  // namespace

TcFormula parse_tc(std::string_view text) { return TcParser(text, 0).parse(); }

TupleSet transitive_closure(const TupleSet& r) {
  if (r.empty()) return r;
  const std::size_t width = r.begin()->size();
  if (width == 0 || width % 2 != 0) throw DomainError("closure tuples must have even, nonzero length");
  const std::size_t k = width / 2;
  std::map<Tuple, std::set<Tuple>> succ;
  std::set<Tuple> nodes;
  for (const auto& t : r) {
    if (t.size() != width) throw DomainError("ragged tuples in relation");
    Tuple a(t.begin(), t.begin() + k), b(t.begin() + k, t.end());
    succ[a].insert(b);
    nodes.insert(a);
  }
  TupleSet out;
  for (const auto& a : nodes) {
    std::set<Tuple> seen;
    std::vector<Tuple> stack(succ[a].begin(), succ[a].end());
    while (!stack.empty()) {
      Tuple b = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(b).second) continue;
      if (auto it = succ.find(b); it != succ.end()) {
        for (const auto& c : it->second) stack.push_back(c);
      }
    }
    for (const auto& b : seen) {
      Tuple t = a;
      t.insert(t.end(), b.begin(), b.end());
      out.insert(std::move(t));
    }
  }
  return out;
}

namespace {

Value tc_term_value(const Model& model, const Assignment& s, const TcTerm& t) {
  switch (t.kind) {
    case TcTerm::Kind::Variable: {
      auto v = s.lookup(t.name);
      if (!v) throw DomainError("unbound variable " + t.name);
      return *v;
    }
    case TcTerm::Kind::Constant: {
      Value v = Value::of(t.name);
      if (!model.contains(v)) throw DomainError("constant '" + t.name + "' is not in the domain");
      return v;
    }
    case TcTerm::Kind::Min:
      return model.min();
    case TcTerm::Kind::Max:
      return model.max();
  }
  return {};
}

}  // namespace

bool tc_eval(const Model& model, const Assignment& s, const TcFormula& phi) {
  if (phi.is_first_order()) return satisfies_tarski(model, s, phi.formula());
  const std::size_t k = phi.xs().size();
  Tuple from, to;
  for (const auto& t : phi.from()) from.push_back(tc_term_value(model, s, t));
  for (const auto& t : phi.to()) to.push_back(tc_term_value(model, s, t));
  const auto& dom = model.domain();
  const std::size_t n = dom.size();
  // Step relation on k-tuples, indexed in mixed radix n.
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= n;
  auto decode = [&](std::size_t code) {
    Tuple t(k);
    for (std::size_t i = k; i-- > 0;) {
      t[i] = dom[code % n];
      code /= n;
    }
    return t;
  };
  std::map<Tuple, std::size_t> code_of;
  std::vector<Tuple> tuples(count);
  for (std::size_t c = 0; c < count; ++c) {
    tuples[c] = decode(c);
    code_of[tuples[c]] = c;
  }
  std::vector<std::vector<std::size_t>> succ(count);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      Assignment ext = s;
      for (std::size_t i = 0; i < k; ++i) {
        ext.bind(phi.xs()[i], tuples[a][i]);
        ext.bind(phi.ys()[i], tuples[b][i]);
      }
      if (tc_eval(model, ext, phi.body())) succ[a].push_back(b);
    }
  }
  // Paths of length at least one from `from` to `to`.
  std::size_t src = code_of.at(from), dst = code_of.at(to);
  std::vector<bool> seen(count, false);
  std::vector<std::size_t> stack(succ[src].begin(), succ[src].end());
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    if (v == dst) return true;
    for (auto w : succ[v]) stack.push_back(w);
  }
  return false;
}

namespace {

void all_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::NegEq:
      if (f.lhs_term().is_var()) out.insert(f.lhs_term().name);
      if (f.rhs_term().is_var()) out.insert(f.rhs_term().name);
      return;
    case FormulaKind::Rel:
    case FormulaKind::NegRel:
      for (const auto& t : f.args()) {
        if (t.is_var()) out.insert(t.name);
      }
      return;
    case FormulaKind::Inclusion:
      out.insert(f.included().begin(), f.included().end());
      out.insert(f.including().begin(), f.including().end());
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      all_variables(f.left(), out);
      all_variables(f.right(), out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out.insert(f.bound_var());
      all_variables(f.body(), out);
      return;
  }
}

std::string fresh(std::string base, std::set<std::string>& taken) {
  while (taken.contains(base)) base += "_";
  taken.insert(base);
  return base;
}

class Lex {
 public:
  explicit Lex(std::string w) : w_(std::move(w)) {}

  Formula lt(const std::string& a, const std::string& b) const {
    return Formula::rel(std::string(kOrderRelation), {Term::var(a), Term::var(b)});
  }
  Formula nlt(const std::string& a, const std::string& b) const {
    return Formula::neg_rel(std::string(kOrderRelation), {Term::var(a), Term::var(b)});
  }
  Formula is_min(const std::string& v) const { return Formula::forall(w_, nlt(w_, v)); }
  Formula is_max(const std::string& v) const { return Formula::forall(w_, nlt(v, w_)); }
  Formula not_min(const std::string& v) const { return Formula::exists(w_, lt(w_, v)); }
  Formula not_max(const std::string& v) const { return Formula::exists(w_, lt(v, w_)); }

  Formula all_min(const std::vector<std::string>& vs) const { return each(vs, &Lex::is_min, true); }
  Formula all_max(const std::vector<std::string>& vs) const { return each(vs, &Lex::is_max, true); }
  Formula some_not_min(const std::vector<std::string>& vs) const {
    return each(vs, &Lex::not_min, false);
  }
  Formula some_not_max(const std::vector<std::string>& vs) const {
    return each(vs, &Lex::not_max, false);
  }

  /// a < b lexicographically.
  Formula less(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
    std::vector<Formula> cases;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<Formula> parts;
      for (std::size_t j = 0; j < i; ++j) parts.push_back(Formula::eq(Term::var(a[j]), Term::var(b[j])));
      parts.push_back(lt(a[i], b[i]));
      cases.push_back(conjunction_of(parts));
    }
    return disjunction_of(cases);
  }

 private:
  Formula each(const std::vector<std::string>& vs, Formula (Lex::*atom)(const std::string&) const,
               bool conjunctive) const {
    std::vector<Formula> parts;
    for (const auto& v : vs) parts.push_back((this->*atom)(v));
    return conjunctive ? conjunction_of(parts) : disjunction_of(parts);
  }

  std::string w_;
};

}  // namespace

Formula translate_tc(const TcFormula& phi) {
  if (phi.is_first_order() || !phi.body().is_first_order()) {
    throw UnsupportedFragment("translation expects [TC_{x,y} alpha](min,max) with alpha first-order");
  }
  for (const auto& t : phi.from()) {
    if (t.kind != TcTerm::Kind::Min) throw UnsupportedFragment("TC must start at min");
  }
  for (const auto& t : phi.to()) {
    if (t.kind != TcTerm::Kind::Max) throw UnsupportedFragment("TC must end at max");
  }
  const Formula& alpha = phi.body().formula();
  if (!alpha.is_first_order()) throw UnsupportedFragment("TC body must be first-order");
  const auto& xs = phi.xs();
  const auto& ys = phi.ys();
  std::set<std::string> allowed(xs.begin(), xs.end());
  allowed.insert(ys.begin(), ys.end());
  for (const auto& v : free_vars(alpha)) {
    if (!allowed.contains(v)) {
      throw UnsupportedFragment("TC body has a parameter " + v + "; only sentences are translated");
    }
  }

  std::set<std::string> taken = allowed;
  all_variables(alpha, taken);
  const std::size_t k = xs.size();
  std::vector<std::string> tx, ty;
  for (std::size_t i = 0; i < k; ++i) {
    std::string suffix = k == 1 ? "" : std::to_string(i + 1);
    tx.push_back(fresh("tx" + suffix, taken));
    ty.push_back(fresh("ty" + suffix, taken));
  }
  Lex lex(fresh("w", taken));

  std::vector<std::string> lhs = ys, rhs = xs;
  lhs.insert(lhs.end(), ty.begin(), ty.end());
  rhs.insert(rhs.end(), tx.begin(), tx.end());
  Formula psi1 = Formula::inclusion(lhs, rhs);
  Formula step = conjunction_of({lex.some_not_max(tx), lex.less(tx, ty), alpha});
  Formula wrap = Formula::conj(lex.all_max(tx), lex.all_min(ty));
  Formula psi2 = Formula::disj(step, wrap);
  Formula psi3 = Formula::disj(lex.some_not_min(tx), lex.all_min(xs));
  Formula psi4 = Formula::disj(lex.some_not_max(tx), lex.all_max(xs));
  // On a one-element domain the counter cannot advance, so the single row
  // must itself be a step.
  Formula psi5 = disjunction_of({lex.some_not_min(tx), lex.some_not_max(tx), alpha});

  Formula body = conjunction_of({psi1, psi2, psi3, psi4, psi5});
  std::vector<std::string> prefix = xs;
  prefix.insert(prefix.end(), ys.begin(), ys.end());
  prefix.insert(prefix.end(), tx.begin(), tx.end());
  prefix.insert(prefix.end(), ty.begin(), ty.end());
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

bool sentence_holds(const Model& model, const Formula& sentence) {
  if (!free_vars(sentence).empty()) throw DomainError("expected a sentence");
  return mc(model, Team::unit(), sentence);
}

std::vector<TcFormula> tc_templates() {
  std::vector<TcFormula> out;
  for (const char* body : {"E(x,y)", "E(x,y) | x=y", "E(y,x)", "E z. (E(x,z) & E(z,y))"}) {
    out.push_back(TcFormula::tc({"x"}, {"y"}, TcFormula::first_order(parse_formula(body)),
                                {TcTerm::min()}, {TcTerm::max()}));
  }
  return out;
}

namespace {

Model chain_with_relation(std::size_t n, const std::vector<bool>& bits) {
  Relation e{2, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (bits[i * n + j]) e.tuples.insert({Value::of(std::to_string(i)), Value::of(std::to_string(j))});
    }
  }
  return ordered_chain(n, {{"E", e}});
}

struct CaseResult {
  bool mismatch = false;
  bool not_weak = false;
  std::string detail;
};

CaseResult run_case(const Model& model, const TcFormula& tc, const Formula& translated) {
  CaseResult r;
  bool expected = tc_eval(model, {}, tc);
  bool actual = sentence_holds(model, translated);
  if (expected != actual) {
    r.mismatch = true;
    const auto& tuples = model.relations().at("E").tuples;
    std::string edges;
    for (const auto& t : std::set<Tuple>(tuples.begin(), tuples.end())) edges += " " + to_string(t);
    r.detail = to_string(tc) + " on chain of " + std::to_string(model.domain().size()) +
               " with E:" + edges + " expected " + (expected ? "true" : "false");
  }
  r.not_weak = !is_weak_fragment(translated);
  return r;
}

void absorb(TcHarnessReport& rep, const CaseResult& r) {
  ++rep.cases;
  if (r.mismatch) {
    ++rep.mismatches;
    rep.details.push_back(r.detail);
  }
  if (r.not_weak) ++rep.not_weak;
}

}  // namespace

TcHarnessReport tc_equiv_harness(std::size_t n, std::size_t trials, std::uint64_t seed,
                                 std::size_t jobs) {
  if (n == 0) throw DomainError("model size must be at least 1");
  if (n > 8) throw GuardExceeded("harness models are limited to 8 elements");
  auto templates = tc_templates();
  std::vector<Formula> translated;
  for (const auto& t : templates) translated.push_back(translate_tc(t));

  std::mt19937_64 master(seed);
  std::vector<std::uint64_t> seeds(trials);
  for (auto& s : seeds) s = master();
  std::vector<CaseResult> results(trials);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(seeds[i]);
      std::size_t size = std::uniform_int_distribution<std::size_t>(1, n)(rng);
      std::size_t which = std::uniform_int_distribution<std::size_t>(0, templates.size() - 1)(rng);
      std::bernoulli_distribution coin(0.4);
      std::vector<bool> bits(size * size);
      for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = coin(rng);
      results[i] = run_case(chain_with_relation(size, bits), templates[which], translated[which]);
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  if (jobs == 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (trials + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs; ++j) {
      std::size_t b = j * chunk, e = std::min(trials, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }
  TcHarnessReport rep;
  for (const auto& r : results) absorb(rep, r);
  return rep;
}

TcHarnessReport tc_equiv_exhaustive(std::size_t n) {
  if (n > 3) throw GuardExceeded("exhaustive enumeration is limited to 3 elements");
  auto templates = tc_templates();
  std::vector<Formula> translated;
  for (const auto& t : templates) translated.push_back(translate_tc(t));
  TcHarnessReport rep;
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t cells = size * size;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
      std::vector<bool> bits(cells);
      for (std::size_t b = 0; b < cells; ++b) bits[b] = mask >> b & 1;
      Model model = chain_with_relation(size, bits);
      for (std::size_t t = 0; t < templates.size(); ++t) {
        absorb(rep, run_case(model, templates[t], translated[t]));
      }
    }
  }
  return rep;
}

}  // namespace incl
