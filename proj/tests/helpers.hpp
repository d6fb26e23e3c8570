#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/game.hpp"
#include "tetris/piece.hpp"
#include "tetris/solver.hpp"

namespace testing {

using namespace tetris;

// Cells of a state drawn in its bounding box, top row first, rows joined by '/'.
inline std::string picture(const Cells& cs) {
  int r0 = cs[0].row, r1 = r0, c0 = cs[0].col, c1 = c0;
  for (const Cell& c : cs) {
    r0 = std::min(r0, c.row);
    r1 = std::max(r1, c.row);
    c0 = std::min(c0, c.col);
    c1 = std::max(c1, c.col);
  }
  std::string s;
  for (int r = r1; r >= r0; --r) {
    if (r != r1) s += '/';
    for (int c = c0; c <= c1; ++c) {
      bool on = false;
      for (const Cell& x : cs) on = on || (x.row == r && x.col == c);
      s += on ? 'X' : '.';
    }
  }
  return s;
}

// Board from rows given top first.
inline Board board_of(const std::vector<std::string>& rows) {
  Board b(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < rows[i].size(); ++c)
      if (rows[i][c] == '#') b.set(static_cast<int>(rows.size() - i), static_cast<int>(c + 1));
  return b;
}

// Random legal board: filled cells only in the lowest rows, no full row.
inline Board random_board(std::mt19937& rng, int rows, int cols, int max_fill_rows) {
  Board b(rows, cols);
  const int fill = static_cast<int>(rng() % (max_fill_rows + 1));
  for (int r = 1; r <= fill; ++r) {
    for (int c = 1; c <= cols; ++c)
      if (rng() % 3) b.set(r, c);
    if (b.row_full(r)) b.set(r, 1 + static_cast<int>(rng() % cols), false);
  }
  return b;
}

// Prefix moves from the entry state, then drops until resting, then fix.
inline Trajectory settle(const Board& b, PieceType t, Trajectory prefix = {},
                         RotationModel m = RotationModel::Instantaneous) {
  PieceState s = initial_state(t, b);
  for (Move mv : prefix) s = apply_move(s, b, m, mv);
  while (move_legal(s, b, m, Move::Drop)) {
    s = apply_move(s, b, m, Move::Drop);
    prefix.push_back(Move::Drop);
  }
  prefix.push_back(Move::Fix);
  return prefix;
}

// Plays each piece straight down, stopping at a blocked entry.
inline std::vector<Trajectory> settle_all(Board b, const std::vector<PieceType>& ps, const RuleFlags& f = {}) {
  std::vector<Trajectory> out;
  if (f.no_loss) b = keep_margin(b);
  for (PieceType t : ps) {
    if (entry_blocked(t, b)) break;
    out.push_back(settle(b, t));
    b = run_trajectory(b, t, out.back(), RotationModel::Instantaneous, f).board;
    if (f.no_loss) b = keep_margin(b);
  }
  return out;
}

inline std::set<Cell> cell_set(const Cells& cs) { return {cs.begin(), cs.end()}; }

// Plain exact cover: take the lowest-leftmost open cell and try every piece
// square on it.
inline bool naive_tile(std::set<Cell> open, const std::vector<PieceType>& ps) {
  if (open.empty()) return true;
  const Cell first = *open.begin();
  for (PieceType t : ps)
    for (int o = 0; o < 4; ++o)
      for (const Offset& off : shape(t, o)) {
        const Cells cs = piece_cells({t, o, first.row - off.dy, first.col - off.dx, false});
        if (!std::all_of(cs.begin(), cs.end(), [&](const Cell& c) { return open.count(c) > 0; })) continue;
        std::set<Cell> rest = open;
        for (const Cell& c : cs) rest.erase(c);
        if (naive_tile(rest, ps)) return true;
      }
  return false;
}

struct RandomGame {
  GeneratedGame game;
  RuleFlags flags;
  RotationModel model;
};

// At most 6x6 with up to 6 pieces, under a random model and rule set.
inline RandomGame random_game(std::mt19937& rng) {
  const int rows = 3 + static_cast<int>(rng() % 4), cols = 3 + static_cast<int>(rng() % 4);
  const Board b = random_board(rng, rows, cols, 2);
  std::vector<PieceType> ps;
  const int n = 1 + static_cast<int>(rng() % 6);
  for (int k = 0; k < n; ++k) ps.push_back(kAllPieces[rng() % 7]);
  RandomGame g{plain_game(b, ps), {}, kAllModels[rng() % 3]};
  if (rng() % 4 == 0) g.flags.loss_mode = LossMode::Immediate;
  if (rng() % 5 == 0) g.flags.agility_limit = 1 + static_cast<int>(rng() % 2);
  return g;
}

inline Objective random_objective(std::mt19937& rng, int kind, const RandomGame& g) {
  const int n = static_cast<int>(g.game.pieces.size());
  switch (kind) {
    case 0: return {ObjectiveKind::RowsCleared, static_cast<long long>(rng() % 4)};
    case 1: return {ObjectiveKind::Tetrises, static_cast<long long>(rng() % 2)};
    case 2: return {ObjectiveKind::MaxHeight, g.game.board.height() + static_cast<long long>(rng() % g.game.board.rows())};
    default: return {ObjectiveKind::PiecesPlaced, static_cast<long long>(rng() % (n + 2))};
  }
}

}  // namespace testing
