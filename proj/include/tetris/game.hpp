#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/piece.hpp"
#include "tetris/rotation.hpp"

namespace tetris {

enum class Move { RotateCW, RotateCCW, SlideLeft, SlideRight, Drop, Fix };

inline constexpr Move kAllMoves[6] = {Move::RotateCW, Move::RotateCCW,
                                      Move::SlideLeft, Move::SlideRight,
                                      Move::Drop,     Move::Fix};

std::string_view move_token(Move m);
std::optional<Move> parse_move(std::string_view s);

using Trajectory = std::vector<Move>;

enum class LossMode { Immediate, AfterClear };

struct RuleFlags {
  LossMode loss_mode = LossMode::AfterClear;
  // Most non-drop moves allowed between consecutive drops.
  std::optional<int> agility_limit;
  bool no_loss = false;
};

struct PlayStats {
  long long rows_cleared = 0;
  long long tetrises = 0;
  int max_filled_height = 0;
  long long pieces_placed = 0;
  bool lost = false;
  friend bool operator==(const PlayStats&, const PlayStats&) = default;
};

enum class ObjectiveKind { RowsCleared, Tetrises, MaxHeight, PiecesPlaced };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::RowsCleared;
  long long value = 0;
};

std::optional<Objective> parse_objective(std::string_view s);
std::string objective_string(const Objective& o);

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(std::size_t piece, std::size_t move, const std::string& what)
      : std::runtime_error(what), piece_index(piece), move_index(move) {}
  std::size_t piece_index;
  std::size_t move_index;
};

class BlockedEntry : public std::runtime_error {
 public:
  explicit BlockedEntry(std::size_t piece)
      : std::runtime_error("piece " + std::to_string(piece) + " cannot enter the board"),
        piece_index(piece) {}
  std::size_t piece_index;
};

PieceState initial_state(PieceType t, const Board& b);
bool entry_blocked(PieceType t, const Board& b);

bool move_legal(const PieceState& s, const Board& b, RotationModel m, Move mv);

// agility_used is the number of non-drop moves made since the last drop.
std::vector<Move> legal_moves(const PieceState& s, const Board& b, RotationModel m,
                              const RuleFlags& flags = {}, int agility_used = 0);

PieceState apply_move(const PieceState& s, const Board& b, RotationModel m, Move mv);

struct ClearResult {
  Board board;
  int rows_cleared = 0;
};

ClearResult fix_and_clear(const Board& b, const PieceState& s);

struct PieceOutcome {
  Board board;
  int rows_cleared = 0;
  // Highest filled row right after the fix, before clearing.
  int height_before_clear = 0;
  PieceState final_state;
  bool next_blocked = false;
};

// Plays one trajectory from the piece's initial state. next, when given, is
// checked for a blocked entry on the resulting board.
PieceOutcome run_trajectory(const Board& b, PieceType piece, const Trajectory& traj,
                            RotationModel m, const RuleFlags& flags,
                            std::optional<PieceType> next = std::nullopt,
                            std::size_t piece_index = 0);

struct GameResult {
  PlayStats stats;
  Board final_board;
  std::vector<int> rows_per_piece;
};

GameResult play_game(const Board& b, const std::vector<PieceType>& pieces,
                     const std::vector<Trajectory>& trajs, RotationModel m,
                     const RuleFlags& flags);

PlayStats run_game(const Board& b, const std::vector<PieceType>& pieces,
                   const std::vector<Trajectory>& trajs, RotationModel m,
                   const RuleFlags& flags);

bool evaluate(const PlayStats& s, const Objective& o);

inline constexpr int kNoLossMargin = 8;
// Grows the board so its top kNoLossMargin rows stay empty.
Board keep_margin(const Board& b);

// Board with the piece written into it (no clearing).
Board with_piece(const Board& b, const PieceState& s);

}  // namespace tetris
