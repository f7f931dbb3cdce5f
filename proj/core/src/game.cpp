#include "incl/game.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "incl/errors.hpp"
#include "incl/semantics.hpp"

namespace incl {

std::string to_string(Player p) { return p == Player::I ? "I" : "II"; }

std::string to_string(const GamePosition& p, const Team& team) {
  std::string s = to_string(team.row(p.row));
  std::string n = "n" + std::to_string(p.node);
  return p.kind == GamePosition::Kind::AssignmentNode ? "(" + s + "," + n + ")"
                                                      : "(" + n + "," + s + ")";
}

GameArena GameArena::build(const Model& model, const Team& team, const Row& start,
                           const Formula& phi) {
  auto i = team.find(start);
  if (!i) throw DomainError("start assignment " + to_string(start) + " is not in the team");
  return build(model, team, *i, phi);
}

GameArena GameArena::build(const Model& model, const Team& team, std::size_t start_row,
                           const Formula& phi) {
  if (start_row >= team.size()) throw DomainError("start row is not in the team");
  check_free_vars(team, phi);
  GameArena g;
  g.team_ = team;
  g.tree_ = FormulaTree::build(phi);
  const std::size_t rows = team.size();
  const std::size_t nodes = g.tree_.size();

  g.leaf_slot_.assign(nodes, std::nullopt);
  for (std::size_t n = 0; n < nodes; ++n) {
    if (g.tree_.node(n).label.is_inclusion()) g.leaf_slot_[n] = g.leaf_count_++;
  }
  const std::size_t total = rows * nodes + g.leaf_count_ * rows;
  g.positions_.reserve(total);
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t n = 0; n < nodes; ++n) {
      g.positions_.push_back({GamePosition::Kind::AssignmentNode, s, n});
    }
  }
  for (std::size_t n = 0; n < nodes; ++n) {
    if (!g.leaf_slot_[n]) continue;
    for (std::size_t s = 0; s < rows; ++s) {
      g.positions_.push_back({GamePosition::Kind::NodeAssignment, s, n});
    }
  }
  g.moves_.assign(total, {});
  g.owner_.assign(total, Player::I);
  std::fill(g.owner_.begin() + static_cast<std::ptrdiff_t>(rows * nodes), g.owner_.end(), Player::II);
  g.terminal_.assign(total, false);

  // Witness lists per inclusion leaf: rows s' with s(x) = s'(y).
  std::vector<std::vector<std::vector<std::size_t>>> witnesses(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const Formula& f = g.tree_.node(n).label;
    if (!f.is_inclusion()) continue;
    auto lc = team.columns(f.included());
    auto rc = team.columns(f.including());
    std::unordered_map<Tuple, std::vector<std::size_t>, TupleHash> by_target;
    for (std::size_t s = 0; s < rows; ++s) by_target[team.project(s, rc)].push_back(s);
    witnesses[n].resize(rows);
    for (std::size_t s = 0; s < rows; ++s) {
      auto it = by_target.find(team.project(s, lc));
      if (it != by_target.end()) witnesses[n][s] = it->second;
    }
  }

  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t n = 0; n < nodes; ++n) {
      std::size_t p = g.assignment_node(s, n);
      const auto& node = g.tree_.node(n);
      const Formula& f = node.label;
      auto& mv = g.moves_[p];
      if (f.is_binary()) {
        g.owner_[p] = f.kind() == FormulaKind::Or ? Player::II : Player::I;
        for (auto c : node.children) mv.push_back(g.assignment_node(s, c));
        continue;
      }
      g.owner_[p] = Player::I;
      bool ends = f.is_inclusion() ? witnesses[n][s].empty() : !satisfies_row(model, team, s, f);
      if (ends) {
        g.terminal_[p] = true;
        continue;
      }
      for (auto a : g.tree_.ancestors(n)) mv.push_back(g.assignment_node(s, a));
      if (f.is_inclusion()) {
        std::size_t q = rows * nodes + *g.leaf_slot_[n] * rows + s;
        mv.push_back(q);
        for (auto w : witnesses[n][s]) g.moves_[q].push_back(g.assignment_node(w, n));
      }
    }
  }
  for (auto& mv : g.moves_) std::sort(mv.begin(), mv.end());
  g.start_ = g.assignment_node(start_row, g.tree_.root());
  return g;
}

std::size_t GameArena::assignment_node(std::size_t row, std::size_t node) const {
  return row * tree_.size() + node;
}

std::optional<std::size_t> GameArena::index_of(const GamePosition& p) const {
  if (p.row >= team_.size() || p.node >= tree_.size()) return std::nullopt;
  if (p.kind == GamePosition::Kind::AssignmentNode) return assignment_node(p.row, p.node);
  if (!leaf_slot_[p.node]) return std::nullopt;
  return team_.size() * tree_.size() + *leaf_slot_[p.node] * team_.size() + p.row;
}

bool GameArena::is_legal(std::size_t from, std::size_t to) const {
  const auto& mv = moves_.at(from);
  return std::binary_search(mv.begin(), mv.end(), to);
}

GameArena GameArena::with_start(std::size_t row) const {
  if (row >= team_.size()) throw DomainError("start row is not in the team");
  GameArena g = *this;
  g.start_ = assignment_node(row, tree_.root());
  return g;
}

std::size_t GameArena::move_count() const noexcept {
  std::size_t m = 0;
  for (const auto& mv : moves_) m += mv.size();
  return m;
}

std::string GameArena::to_dot(const std::vector<bool>* attractor) const {
  std::ostringstream out;
  out << "digraph safety {\n  rankdir=TB;\n";
  for (std::size_t p = 0; p < size(); ++p) {
    out << "  p" << p << " [label=\"" << to_string(positions_[p], team_) << "\""
        << ", shape=" << (owner_[p] == Player::I ? "box" : "diamond");
    if (terminal_[p]) out << ", peripheries=2";
    if (attractor && (*attractor)[p]) out << ", style=filled, fillcolor=lightcoral";
    if (p == start_) out << ", penwidth=2";
    out << "];\n";
  }
  for (std::size_t p = 0; p < size(); ++p) {
    for (auto q : moves_[p]) out << "  p" << p << " -> p" << q << ";\n";
  }
  out << "}\n";
  return out.str();
}

GameSolution solve(const GameArena& arena) {
  const std::size_t n = arena.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (auto q : arena.moves(p)) preds[q].push_back(p);
  }
  std::vector<bool> attr(n, false);
  std::vector<std::size_t> rank(n, 0);
  std::vector<std::size_t> remaining(n);
  std::deque<std::size_t> queue;
  for (std::size_t p = 0; p < n; ++p) {
    remaining[p] = arena.moves(p).size();
    if (arena.terminal(p)) {
      attr[p] = true;
      queue.push_back(p);
    }
  }
  while (!queue.empty()) {
    std::size_t q = queue.front();
    queue.pop_front();
    for (auto p : preds[q]) {
      if (attr[p]) continue;
      bool take = arena.owner(p) == Player::I || --remaining[p] == 0;
      if (take) {
        attr[p] = true;
        rank[p] = rank[q] + 1;
        queue.push_back(p);
      }
    }
  }

  GameSolution sol;
  sol.winner = attr[arena.start()] ? Player::I : Player::II;
  sol.strategy_i.choice.assign(n, std::nullopt);
  sol.strategy_ii.choice.assign(n, std::nullopt);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& mv = arena.moves(p);
    if (mv.empty()) continue;
    std::optional<std::size_t> pick;
    if (arena.owner(p) == Player::I) {
      if (attr[p]) {
        for (auto q : mv) {
          if (attr[q] && rank[q] < rank[p] && (!pick || rank[q] < rank[*pick])) pick = q;
        }
      }
      sol.strategy_i.choice[p] = pick ? *pick : mv.front();
    } else {
      for (auto q : mv) {
        if (!attr[q]) {
          pick = q;
          break;
        }
      }
      sol.strategy_ii.choice[p] = pick ? *pick : mv.front();
    }
  }
  sol.attractor = std::move(attr);
  return sol;
}

Player solve_bounded(const GameArena& arena, std::size_t k) {
  if (k == 0) throw DomainError("the bound must be at least 1");
  const std::size_t n = arena.size();
  const std::size_t start = arena.start();
  if (arena.terminal(start)) return Player::I;
  auto is_an = [&](std::size_t p) {
    return arena.position(p).kind == GamePosition::Kind::AssignmentNode;
  };
  // win[p] at layer c: Player I wins from p after c assignment-node plays.
  std::vector<char> next(n, 0), cur(n, 0);
  auto value_of_move = [&](std::size_t q, std::size_t c, const std::vector<char>& upper,
                           const std::vector<char>& same) -> bool {
    if (is_an(q)) {
      if (arena.terminal(q)) return true;
      if (c + 1 == k) return false;
      return upper[q];
    }
    return same[q];
  };
  auto evaluate = [&](std::size_t p, std::size_t c, const std::vector<char>& upper,
                      const std::vector<char>& same) -> bool {
    if (arena.terminal(p)) return true;
    const auto& mv = arena.moves(p);
    if (mv.empty()) return false;
    if (arena.owner(p) == Player::I) {
      return std::any_of(mv.begin(), mv.end(),
                         [&](std::size_t q) { return value_of_move(q, c, upper, same); });
    }
    return std::all_of(mv.begin(), mv.end(),
                       [&](std::size_t q) { return value_of_move(q, c, upper, same); });
  };
  for (std::size_t c = k; c-- > 0;) {
    for (std::size_t p = 0; p < n; ++p) {
      if (!is_an(p)) cur[p] = evaluate(p, c, next, cur);
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (is_an(p)) cur[p] = evaluate(p, c, next, cur);
    }
    std::swap(next, cur);
  }
  return next[start] ? Player::I : Player::II;
}

Trace replay(const GameArena& arena, const Strategy& pi_i, const Strategy& pi_ii,
             std::size_t max_steps) {
  Trace t;
  std::size_t p = arena.start();
  t.positions.push_back(p);
  for (std::size_t step = 0;; ++step) {
    if (arena.terminal(p)) {
      t.end = Trace::End::Terminal;
      return t;
    }
    if (arena.moves(p).empty()) {
      t.end = Trace::End::Stuck;
      return t;
    }
    if (step == max_steps) {
      t.end = Trace::End::MaxSteps;
      return t;
    }
    const Strategy& pi = arena.owner(p) == Player::I ? pi_i : pi_ii;
    if (p >= pi.choice.size() || !pi.choice[p]) {
      throw ValidationError("strategy of Player " + to_string(arena.owner(p)) +
                            " is undefined at " + to_string(arena.position(p), arena.team()));
    }
    std::size_t q = *pi.choice[p];
    if (!arena.is_legal(p, q)) {
      throw ValidationError("illegal move from " + to_string(arena.position(p), arena.team()));
    }
    p = q;
    t.positions.push_back(p);
  }
}

}  // namespace incl
