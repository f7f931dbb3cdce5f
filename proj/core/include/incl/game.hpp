#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "incl/formula.hpp"
#include "incl/model.hpp"
#include "incl/team.hpp"

namespace incl {

enum class Player { I, II };

std::string to_string(Player p);

struct GamePosition {
  enum class Kind { AssignmentNode, NodeAssignment };

  Kind kind;
  std::size_t row;
  std::size_t node;

  friend bool operator==(const GamePosition&, const GamePosition&) = default;
};

std::string to_string(const GamePosition& p, const Team& team);

/// Positional strategy: chosen successor per position, defined on the
/// positions owned by the strategy's player.
struct Strategy {
  std::vector<std::optional<std::size_t>> choice;
};

/// Arena of the safety game for a quantifier-free formula on a fixed team.
/// Positions are indexed densely; assignment-node positions (s,n) come first,
/// followed by node-assignment positions (n,s) for inclusion leaves only.
class GameArena {
 public:
  /// Throws DomainError when `start_row` is not a row index of `team`, and
  /// UnsupportedFragment for a quantified formula.
  static GameArena build(const Model& model, const Team& team, std::size_t start_row,
                         const Formula& phi);
  /// As above, locating the start assignment in the team.
  static GameArena build(const Model& model, const Team& team, const Row& start,
                         const Formula& phi);

  std::size_t size() const noexcept { return positions_.size(); }
  const GamePosition& position(std::size_t id) const { return positions_.at(id); }
  std::optional<std::size_t> index_of(const GamePosition& p) const;
  /// Index of the assignment-node position (row, node).
  std::size_t assignment_node(std::size_t row, std::size_t node) const;

  const std::vector<std::size_t>& moves(std::size_t id) const { return moves_.at(id); }
  Player owner(std::size_t id) const { return owner_.at(id); }
  /// Positions where the game ends and Player I wins.
  bool terminal(std::size_t id) const { return terminal_.at(id); }
  bool is_legal(std::size_t from, std::size_t to) const;

  std::size_t start() const noexcept { return start_; }
  /// Same arena with a different starting row.
  GameArena with_start(std::size_t row) const;

  const Team& team() const noexcept { return team_; }
  const FormulaTree& tree() const noexcept { return tree_; }
  std::size_t move_count() const noexcept;

  /// Graphviz rendering; attractor positions (if given) are filled.
  std::string to_dot(const std::vector<bool>* attractor = nullptr) const;

 private:
  Team team_;
  FormulaTree tree_;
  std::vector<GamePosition> positions_;
  std::vector<std::vector<std::size_t>> moves_;
  std::vector<Player> owner_;
  std::vector<bool> terminal_;
  std::vector<std::optional<std::size_t>> leaf_slot_;
  std::size_t leaf_count_ = 0;
  std::size_t start_ = 0;
};

struct GameSolution {
  Player winner;
  /// Player I's attractor of the terminal positions.
  std::vector<bool> attractor;
  Strategy strategy_i;
  Strategy strategy_ii;
};

/// Attractor-based solution. A non-terminal position without successors does
/// not end the game, so it is never in the attractor.
GameSolution solve(const GameArena& arena);

/// Winner of the variant in which assignment-node positions other than the
/// start may be played at most `k` times; reaching the k-th such position
/// without termination is a win for Player II. Throws DomainError for k == 0.
Player solve_bounded(const GameArena& arena, std::size_t k);

struct Trace {
  enum class End { Terminal, Stuck, MaxSteps };

  std::vector<std::size_t> positions;
  End end;
};

/// Plays both strategies against each other from the start position. Throws
/// ValidationError when a strategy is undefined on its player's position or
/// picks an illegal move.
Trace replay(const GameArena& arena, const Strategy& pi_i, const Strategy& pi_ii,
             std::size_t max_steps);

}  // namespace incl
