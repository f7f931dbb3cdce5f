#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "incl/formula.hpp"
#include "incl/model.hpp"
#include "incl/msm.hpp"
#include "incl/team.hpp"

namespace incl {

class Digraph {
 public:
  Digraph() = default;
  /// Throws DomainError when an edge or the marked pair leaves the vertex set.
  Digraph(std::vector<Value> vertices, std::vector<std::pair<Value, Value>> edges,
          std::optional<std::pair<Value, Value>> marked = std::nullopt);

  const std::set<Value>& vertices() const noexcept { return vertices_; }
  const std::set<std::pair<Value, Value>>& edges() const noexcept { return edges_; }
  const std::optional<std::pair<Value, Value>>& marked() const noexcept { return marked_; }

  bool has_vertex(Value v) const { return vertices_.contains(v); }
  /// Successors in canonical order.
  std::vector<Value> successors(Value v) const;
  std::vector<Value> predecessors(Value v) const;
  std::size_t out_degree(Value v) const { return successors(v).size(); }
  bool acyclic() const;

 private:
  std::set<Value> vertices_;
  std::set<std::pair<Value, Value>> edges_;
  std::optional<std::pair<Value, Value>> marked_;
};

/// Monotone circuit. Gate inputs name other gates or the constants "T" / "F".
struct Gate {
  enum class Op { And, Or, Input };

  Op op = Op::Input;
  std::string left;
  std::string right;
  bool value = false;
};

struct Circuit {
  std::map<std::string, Gate> gates;
  std::string output;
};

enum class CyclePolicy { Reject, LeastFixpoint };

struct GameInstance {
  Digraph graph;
  Value start;
};

struct ReductionOutput {
  std::optional<Model> model;
  Team team;
  Row query_row;
  Formula formula;
};

/// The model a reduction's team is evaluated in: the emitted model, or the
/// bare structure on the values occurring in the team.
Model model_of(const ReductionOutput& out);

/// Breadth-first reachability; a vertex reaches itself.
bool reach_solve(const Digraph& g, Value a, Value b);

/// Team over (x,y) with a row (d,c) per edge (c,d) of E + (b,a); query (a,b).
/// a reaches b iff the query row is in the maximal subteam of x <= y (and of
/// x <= y & y <= x when `bidirectional`). Throws PreconditionError for cyclic G.
ReductionOutput reduce_reach(const Digraph& g, Value a, Value b, bool bidirectional);

/// Whether following unique out-edges from a arrives at b.
bool detreach_solve(const Digraph& g, Value a, Value b);

/// Team over (y,x) with a row (u,v) per edge (u,v) that is the only edge
/// leaving u; query is a's row. Requires out-degree 1 at a and b and no cycle
/// other than a self-loop on b.
ReductionOutput reduce_detreach(const Digraph& g, Value a, Value b);

/// Monotone evaluation. Cycles throw PreconditionError under
/// CyclePolicy::Reject and take the least fixpoint otherwise.
bool mcvp_solve(const Circuit& c, CyclePolicy policy = CyclePolicy::Reject);

enum class McvpVariant { XzYz, XyYz, XyXz };

std::string to_string(McvpVariant v);
/// Parses "xz_yz", "xy_yz" or "xy_xz".
McvpVariant mcvp_variant_from_string(const std::string& s);

/// Team over (x,y,z) for the circuit; query (out,T,T).
ReductionOutput reduce_mcvp(const Circuit& c, McvpVariant variant);

/// Team over (x,y,z) with z a key: a row (j,k,i) for each i != b with
/// successors j < k, or (j,j,i) for a single successor. a reaches b iff the
/// query row (a's row) is NOT in the maximal subteam of x <= z & y <= z.
ReductionOutput reduce_reach_keyed(const Digraph& g, Value a, Value b);

struct GameOutcome {
  std::set<Value> winning;   // W: Player II wins with Player I to move
  std::set<Value> immediate; // I: Player I cannot move
};

/// Backward induction on a DAG. Throws PreconditionError on a cycle.
GameOutcome game_solve(const GameInstance& inst);

/// Model (V,E) with every edge as a row over (x,y), query (b,start) for the
/// least predecessor b of start, formula A z. (!E(y,z) | z <= x).
ReductionOutput reduce_game(const GameInstance& inst);

/// X' = {s u t : t in Z1} u {t u t' : t in X \ {s}, t' in Z0} for
/// Z0 = nu(Y, beta), Z1 = Y \ Z0. Then s is in nu(X, alpha) iff X' satisfies
/// alpha | beta. Requires disjoint variable domains and a proper, nonempty Z0.
Team msm_to_mc_lift(const Model& model, const Team& x, const Row& s, const Formula& alpha,
                    const Formula& beta, const Team& y, const MsmOptions& opts = {});

}  // namespace incl
