#include "tetris/game.hpp"

#include <algorithm>
#include <charconv>

namespace tetris {

std::string_view move_token(Move m) {
  switch (m) {
    case Move::RotateCW: return "cw";
    case Move::RotateCCW: return "ccw";
    case Move::SlideLeft: return "left";
    case Move::SlideRight: return "right";
    case Move::Drop: return "drop";
    case Move::Fix: return "fix";
  }
  return "?";
}

std::optional<Move> parse_move(std::string_view s) {
  for (Move m : kAllMoves)
    if (move_token(m) == s) return m;
  return std::nullopt;
}

std::optional<Objective> parse_objective(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto kind = s.substr(0, colon);
  const auto num = s.substr(colon + 1);
  long long v = 0;
  auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc() || p != num.data() + num.size() || v < 0) return std::nullopt;
  Objective o;
  o.value = v;
  if (kind == "rows") o.kind = ObjectiveKind::RowsCleared;
  else if (kind == "tetrises") o.kind = ObjectiveKind::Tetrises;
  else if (kind == "height") o.kind = ObjectiveKind::MaxHeight;
  else if (kind == "pieces") o.kind = ObjectiveKind::PiecesPlaced;
  else return std::nullopt;
  return o;
}

std::string objective_string(const Objective& o) {
  const char* k = "rows";
  switch (o.kind) {
    case ObjectiveKind::RowsCleared: k = "rows"; break;
    case ObjectiveKind::Tetrises: k = "tetrises"; break;
    case ObjectiveKind::MaxHeight: k = "height"; break;
    case ObjectiveKind::PiecesPlaced: k = "pieces"; break;
  }
  return std::string(k) + ":" + std::to_string(o.value);
}

PieceState initial_state(PieceType t, const Board& b) {
  PieceState s;
  s.type = t;
  s.orient = 0;
  s.col = b.cols() / 2;
  int top = shape(t, 0)[0].dy;
  for (const Offset& o : shape(t, 0)) top = std::max(top, o.dy);
  s.row = b.rows() - top;
  return s;
}

bool entry_blocked(PieceType t, const Board& b) {
  return !b.fits(piece_cells(initial_state(t, b)));
}

namespace {

PieceState shifted(PieceState s, int dr, int dc) {
  s.row += dr;
  s.col += dc;
  return s;
}

bool rests(const PieceState& s, const Board& b) {
  for (const Cell& c : piece_cells(s))
    if (b.filled(c.row - 1, c.col)) return true;
  return false;
}

}  // namespace

bool move_legal(const PieceState& s, const Board& b, RotationModel m, Move mv) {
  if (s.fixed) return false;
  switch (mv) {
    case Move::RotateCW: return rotation_legal(m, s, +1, b);
    case Move::RotateCCW: return rotation_legal(m, s, -1, b);
    case Move::SlideLeft: return b.fits(piece_cells(shifted(s, 0, -1)));
    case Move::SlideRight: return b.fits(piece_cells(shifted(s, 0, +1)));
    case Move::Drop: return !rests(s, b);
    case Move::Fix: return rests(s, b);
  }
  return false;
}

std::vector<Move> legal_moves(const PieceState& s, const Board& b, RotationModel m,
                              const RuleFlags& flags, int agility_used) {
  std::vector<Move> out;
  if (s.fixed) return out;
  const bool spent = flags.agility_limit && agility_used >= *flags.agility_limit;
  for (Move mv : kAllMoves) {
    if (spent && mv != Move::Drop && mv != Move::Fix) continue;
    if (move_legal(s, b, m, mv)) out.push_back(mv);
  }
  return out;
}

PieceState apply_move(const PieceState& s, const Board& b, RotationModel m, Move mv) {
  if (!move_legal(s, b, m, mv))
    throw IllegalMove(0, 0, "illegal move " + std::string(move_token(mv)));
  switch (mv) {
    case Move::RotateCW: return rotation_target(m, s, +1);
    case Move::RotateCCW: return rotation_target(m, s, -1);
    case Move::SlideLeft: return shifted(s, 0, -1);
    case Move::SlideRight: return shifted(s, 0, +1);
    case Move::Drop: return shifted(s, -1, 0);
    case Move::Fix: {
      PieceState f = s;
      f.fixed = true;
      return f;
    }
  }
  return s;
}

Board with_piece(const Board& b, const PieceState& s) {
  Board out = b;
  for (const Cell& c : piece_cells(s)) {
    if (b.filled(c)) throw std::logic_error("piece overlaps a filled cell");
    out.set(c);
  }
  return out;
}

ClearResult fix_and_clear(const Board& b, const PieceState& s) {
  if (!s.fixed) throw std::logic_error("fix_and_clear needs a fixed piece");
  ClearResult r{with_piece(b, s), 0};
  r.rows_cleared = r.board.clear_full_rows();
  return r;
}

PieceOutcome run_trajectory(const Board& b, PieceType piece, const Trajectory& traj,
                            RotationModel m, const RuleFlags& flags,
                            std::optional<PieceType> next, std::size_t piece_index) {
  if (entry_blocked(piece, b)) throw BlockedEntry(piece_index);
  PieceState s = initial_state(piece, b);
  int used = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Move mv = traj[k];
    if (s.fixed)
      throw IllegalMove(piece_index, k, "move after fix in piece " + std::to_string(piece_index));
    const bool counted = mv != Move::Drop && mv != Move::Fix;
    if (counted && flags.agility_limit && used >= *flags.agility_limit)
      throw IllegalMove(piece_index, k, "agility budget exceeded in piece " + std::to_string(piece_index) +
                                            " at move " + std::to_string(k));
    if (!move_legal(s, b, m, mv))
      throw IllegalMove(piece_index, k, "illegal move " + std::string(move_token(mv)) + " in piece " +
                                            std::to_string(piece_index) + " at move " + std::to_string(k));
    s = apply_move(s, b, m, mv);
    if (mv == Move::Drop) used = 0;
    else if (counted) ++used;
  }
  if (!s.fixed)
    throw IllegalMove(piece_index, traj.size(), "trajectory for piece " + std::to_string(piece_index) +
                                                    " does not end with fix");
  PieceOutcome out;
  out.final_state = s;
  Board placed = with_piece(b, s);
  out.height_before_clear = placed.height();
  if (next && flags.loss_mode == LossMode::Immediate && !flags.no_loss)
    out.next_blocked = entry_blocked(*next, placed);
  out.rows_cleared = placed.clear_full_rows();
  out.board = std::move(placed);
  if (next && flags.loss_mode == LossMode::AfterClear && !flags.no_loss)
    out.next_blocked = entry_blocked(*next, out.board);
  return out;
}

Board keep_margin(const Board& b) {
  const int need = b.height() + kNoLossMargin;
  if (need <= b.rows()) return b;
  Board out(need, b.cols());
  for (int r = 1; r <= b.rows(); ++r)
    for (int c = 1; c <= b.cols(); ++c)
      if (b.filled(r, c)) out.set(r, c);
  return out;
}

GameResult play_game(const Board& b, const std::vector<PieceType>& pieces,
                     const std::vector<Trajectory>& trajs, RotationModel m,
                     const RuleFlags& flags) {
  if (trajs.size() > pieces.size())
    throw std::invalid_argument("more trajectories than pieces");
  GameResult res;
  Board cur = flags.no_loss ? keep_margin(b) : b;
  res.stats.max_filled_height = cur.height();
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    if (entry_blocked(pieces[i], cur)) {
      if (flags.no_loss) throw BlockedEntry(i);
      res.stats.lost = true;
      break;
    }
    std::optional<PieceType> next;
    if (i + 1 < pieces.size()) next = pieces[i + 1];
    PieceOutcome o = run_trajectory(cur, pieces[i], trajs[i], m, flags, next, i);
    res.stats.pieces_placed += 1;
    res.stats.rows_cleared += o.rows_cleared;
    if (o.rows_cleared >= 4) res.stats.tetrises += 1;
    res.stats.max_filled_height = std::max(res.stats.max_filled_height, o.height_before_clear);
    res.rows_per_piece.push_back(o.rows_cleared);
    cur = flags.no_loss ? keep_margin(o.board) : std::move(o.board);
    if (o.next_blocked) {
      res.stats.lost = true;
      break;
    }
  }
  res.final_board = std::move(cur);
  return res;
}

PlayStats run_game(const Board& b, const std::vector<PieceType>& pieces,
                   const std::vector<Trajectory>& trajs, RotationModel m,
                   const RuleFlags& flags) {
  return play_game(b, pieces, trajs, m, flags).stats;
}

bool evaluate(const PlayStats& s, const Objective& o) {
  switch (o.kind) {
    case ObjectiveKind::RowsCleared: return s.rows_cleared >= o.value;
    case ObjectiveKind::Tetrises: return s.tetrises >= o.value;
    case ObjectiveKind::MaxHeight: return s.max_filled_height <= o.value && !s.lost;
    case ObjectiveKind::PiecesPlaced: return s.pieces_placed >= o.value;
  }
  return false;
}

}  // namespace tetris
