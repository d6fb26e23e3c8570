#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tetris/reduction.hpp"
#include "tetris/textio.hpp"

using namespace tetris;
using testing::board_of;
using testing::cell_set;
using testing::settle;

namespace {

Trajectory drops(int n) {
  Trajectory t(n, Move::Drop);
  t.push_back(Move::Fix);
  return t;
}

int top_row(const Cells& cs) {
  int r = cs[0].row;
  for (const Cell& c : cs) r = std::max(r, c.row);
  return r;
}

}  // namespace

TEST_CASE("cells outside the board read as filled") {
  Board b(3, 4);
  CHECK(b.filled(0, 1));
  CHECK(b.filled(4, 1));
  CHECK(b.filled(1, 0));
  CHECK(b.filled(1, 5));
  CHECK(b.open(1, 1));
  CHECK(b.height() == 0);
}

TEST_CASE("board legality") {
  CHECK(board_of({"....", "#..#"}).legal());
  CHECK_FALSE(board_of({"....", "####"}).legal());
  CHECK_FALSE(board_of({".#..", "...."}).legal());
}

TEST_CASE("clearing shifts rows down and opens the top") {
  Board b = board_of({"#...", "####", ".#..", "####"});
  CHECK(b.clear_full_rows() == 2);
  CHECK(b == board_of({"....", "....", "#...", ".#.."}));
}

TEST_CASE("initial states") {
  Board b(20, 10);
  auto sq = initial_state(PieceType::Sq, b);
  CHECK(cell_set(piece_cells(sq)) == std::set<Cell>{{20, 5}, {20, 6}, {19, 5}, {19, 6}});
  auto i = initial_state(PieceType::I, b);
  for (const Cell& c : piece_cells(i)) CHECK(c.row == 20);
  CHECK(i.col == 5);
  for (PieceType t : kAllPieces) {
    auto s = initial_state(t, b);
    CHECK(s.orient == 0);
    CHECK_FALSE(s.fixed);
    CHECK(top_row(piece_cells(s)) == 20);
  }
  const auto g = build_game(normalize(Instance{1, 10, {3, 3, 4}}));
  REQUIRE(g.board.rows() == 273);
  CHECK(top_row(piece_cells(initial_state(PieceType::LG, g.board))) == 273);
}

TEST_CASE("legal moves") {
  Board b(8, 8);
  PieceState s{PieceType::T, 0, 5, 4, false};
  auto ms = legal_moves(s, b, RotationModel::Instantaneous);
  CHECK(ms == std::vector<Move>{Move::RotateCW, Move::RotateCCW, Move::SlideLeft, Move::SlideRight, Move::Drop});
  PieceState floor{PieceType::I, 0, 1, 4, false};
  ms = legal_moves(floor, b, RotationModel::Instantaneous);
  CHECK(std::find(ms.begin(), ms.end(), Move::Fix) != ms.end());
  CHECK(std::find(ms.begin(), ms.end(), Move::Drop) == ms.end());
  floor.fixed = true;
  for (RotationModel m : kAllModels) CHECK(legal_moves(floor, b, m).empty());
  // Spent agility leaves only drop and fix.
  RuleFlags f;
  f.agility_limit = 2;
  CHECK(legal_moves(s, b, RotationModel::Instantaneous, f, 2) == std::vector<Move>{Move::Drop});
  CHECK(legal_moves(s, b, RotationModel::Instantaneous, f, 1).size() == 5);
}

TEST_CASE("apply_move follows the state rules") {
  Board b(8, 8);
  PieceState s{PieceType::LG, 0, 5, 4, false};
  CHECK(apply_move(s, b, RotationModel::Instantaneous, Move::Drop) == PieceState{PieceType::LG, 0, 4, 4, false});
  CHECK(apply_move(s, b, RotationModel::Instantaneous, Move::SlideLeft).col == 3);
  CHECK(apply_move(s, b, RotationModel::Instantaneous, Move::SlideRight).col == 5);
  PieceState low{PieceType::LG, 0, 2, 4, false};
  auto f = apply_move(low, b, RotationModel::Instantaneous, Move::Fix);
  CHECK(f.fixed);
  CHECK(piece_cells(f) == piece_cells(low));
  CHECK_THROWS_AS(apply_move(s, b, RotationModel::Instantaneous, Move::Fix), IllegalMove);
  // A clockwise then counterclockwise turn in open space is the identity.
  Board big(12, 12);
  for (RotationModel m : kAllModels)
    for (PieceType t : kAllPieces)
      for (int o = 0; o < 4; ++o) {
        PieceState p{t, o, 6, 6, false};
        REQUIRE(move_legal(p, big, m, Move::RotateCW));
        auto q = apply_move(p, big, m, Move::RotateCW);
        REQUIRE(move_legal(q, big, m, Move::RotateCCW));
        CHECK(apply_move(q, big, m, Move::RotateCCW) == p);
      }
}

TEST_CASE("fix_and_clear") {
  auto none = fix_and_clear(board_of({"......", "##....", "##...."}), PieceState{PieceType::Sq, 0, 2, 3, true});
  CHECK(none.rows_cleared == 0);
  CHECK(none.board.filled_count() == 8);
  Board row = board_of({"........", "####...."});
  auto r = fix_and_clear(row, PieceState{PieceType::I, 0, 1, 6, true});
  CHECK(r.rows_cleared == 1);
  CHECK(r.board.filled_count() == 0);
  Board b = board_of({"......", "......", "#.####"});
  CHECK_THROWS_AS(fix_and_clear(b, PieceState{PieceType::I, 0, 1, 3, true}), std::logic_error);
  CHECK_THROWS_AS(fix_and_clear(row, PieceState{PieceType::I, 0, 1, 6, false}), std::logic_error);
}

TEST_CASE("fix_and_clear conserves cells and keeps row order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Board b = testing::random_board(rng, 8, 5, 5);
    for (PieceType t : kAllPieces)
      for (int o = 0; o < 4; ++o)
        for (int r = 1; r <= 8; ++r)
          for (int c = 1; c <= 5; ++c) {
            PieceState s{t, o, r, c, true};
            if (!b.fits(piece_cells(s))) continue;
            auto res = fix_and_clear(b, s);
            CHECK(res.board.filled_count() == b.filled_count() + 4 - 5LL * res.rows_cleared);
            for (int k = 0; k < res.rows_cleared; ++k) CHECK(res.board.row_count(8 - k) == 0);
            // Surviving rows keep their order.
            Board placed = with_piece(b, s);
            int out_row = 1;
            for (int row = 1; row <= 8; ++row) {
              if (placed.row_full(row)) continue;
              for (int c2 = 1; c2 <= 5; ++c2) CHECK(res.board.filled(out_row, c2) == placed.filled(row, c2));
              ++out_row;
            }
          }
  }
}

TEST_CASE("run_trajectory") {
  Board b(6, 4);
  auto o = run_trajectory(b, PieceType::I, drops(5), RotationModel::Instantaneous, {});
  CHECK(o.rows_cleared == 1);
  CHECK(o.board.filled_count() == 0);
  CHECK(o.height_before_clear == 1);
  Board wide(6, 6);
  o = run_trajectory(wide, PieceType::I, drops(5), RotationModel::Instantaneous, {});
  CHECK(o.rows_cleared == 0);
  CHECK(o.board.row_count(1) == 4);
  try {
    run_trajectory(b, PieceType::I, {Move::SlideLeft, Move::Fix}, RotationModel::Instantaneous, {}, std::nullopt, 3);
    FAIL("wall slide accepted");
  } catch (const IllegalMove& e) {
    CHECK(e.piece_index == 3);
    CHECK(e.move_index == 0);
  }
  CHECK_THROWS_AS(run_trajectory(b, PieceType::I, {Move::Drop}, RotationModel::Instantaneous, {}), IllegalMove);
  CHECK_THROWS_AS(run_trajectory(b, PieceType::I, {Move::Fix}, RotationModel::Instantaneous, {}), IllegalMove);
  CHECK_THROWS_AS(run_trajectory(b, PieceType::I, {Move::Drop, Move::Drop, Move::Drop, Move::Drop, Move::Drop,
                                                   Move::Fix, Move::Drop},
                                 RotationModel::Instantaneous, {}),
                  IllegalMove);
  Board full = board_of({"##.#", "#.##"});
  CHECK_THROWS_AS(run_trajectory(full, PieceType::Sq, drops(0), RotationModel::Instantaneous, {}), BlockedEntry);
}

TEST_CASE("agility budget") {
  Board b(10, 10);
  RuleFlags f;
  f.agility_limit = 2;
  const Trajectory ok =
      settle(b, PieceType::T, {Move::SlideLeft, Move::SlideLeft, Move::Drop, Move::RotateCW, Move::SlideLeft});
  CHECK_NOTHROW(run_trajectory(b, PieceType::T, ok, RotationModel::Instantaneous, f));
  const Trajectory bad = settle(b, PieceType::T, {Move::SlideLeft, Move::SlideLeft, Move::SlideLeft});
  CHECK_NOTHROW(run_trajectory(b, PieceType::T, bad, RotationModel::Instantaneous, {}));
  try {
    run_trajectory(b, PieceType::T, bad, RotationModel::Instantaneous, f);
    FAIL("third move accepted");
  } catch (const IllegalMove& e) {
    CHECK(e.move_index == 2);
  }
}

TEST_CASE("loss rules") {
  // The I fills the top row: full before clearing, empty after.
  Board b = board_of({"....", "##.#"});
  const std::vector<PieceType> ps{PieceType::I, PieceType::I};
  const std::vector<Trajectory> ts{{Move::Fix}};
  RuleFlags after, now;
  now.loss_mode = LossMode::Immediate;
  auto s = run_game(b, ps, ts, RotationModel::Instantaneous, after);
  CHECK(s.rows_cleared == 1);
  CHECK_FALSE(s.lost);
  auto s2 = run_game(b, ps, ts, RotationModel::Instantaneous, now);
  CHECK(s2.rows_cleared == 1);
  CHECK(s2.lost);
  CHECK(s2.pieces_placed == 1);
  RuleFlags never = now;
  never.no_loss = true;
  auto s3 = run_game(b, ps, testing::settle_all(b, ps, never), RotationModel::Instantaneous, never);
  CHECK_FALSE(s3.lost);
  CHECK(s3.pieces_placed == 2);
}

TEST_CASE("after-clear play survives a fix that clears every cell above the top") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Board b = testing::random_board(rng, 5, 4, 3);
    for (PieceType t : kAllPieces) {
      if (entry_blocked(t, b)) continue;
      const auto ts = std::vector<Trajectory>{settle(b, t)};
      auto o = run_trajectory(b, t, ts[0], RotationModel::Instantaneous, {});
      if (o.rows_cleared == 0 || o.board.height() > 2) continue;
      // Nothing is left in the entry rows, so no piece is blocked.
      for (PieceType next : kAllPieces)
        CHECK_FALSE(run_game(b, {t, next}, ts, RotationModel::Instantaneous, {}).lost);
    }
  }
}

TEST_CASE("run_game edge cases") {
  Board b(6, 4);
  auto s = run_game(b, {PieceType::I}, {}, RotationModel::Instantaneous, {});
  CHECK(s == PlayStats{});
  Board full = board_of({"##.#", "#.##"});
  s = run_game(full, {PieceType::Sq, PieceType::I}, {{Move::Fix}, {Move::Fix}}, RotationModel::Instantaneous, {});
  CHECK(s.lost);
  CHECK(s.pieces_placed == 0);
  CHECK_THROWS_AS(run_game(b, {}, {drops(5)}, RotationModel::Instantaneous, {}), std::invalid_argument);
  try {
    run_game(b, {PieceType::I, PieceType::I}, {drops(5), {Move::SlideLeft, Move::Fix}}, RotationModel::Instantaneous,
             {});
    FAIL("illegal move accepted");
  } catch (const IllegalMove& e) {
    CHECK(e.piece_index == 1);
  }
}

TEST_CASE("run_game counts tetrises and heights") {
  Board b = board_of({"......", "......", "......", "......", "####.#", "####.#", "####.#", "####.#"});
  const Trajectory t = settle(b, PieceType::I, {Move::Drop, Move::RotateCW, Move::SlideRight, Move::SlideRight});
  auto st = run_game(b, {PieceType::I}, {t}, RotationModel::Instantaneous, {});
  CHECK(st.rows_cleared == 4);
  CHECK(st.tetrises == 1);
  CHECK(st.max_filled_height == 4);
  CHECK(st.pieces_placed == 1);
  CHECK(st.tetrises <= st.rows_cleared / 4);
}

TEST_CASE("no-loss play grows the board") {
  Board b = board_of({"#..#", "#..#"});
  RuleFlags f;
  f.no_loss = true;
  std::vector<PieceType> ps(4, PieceType::Sq);
  const auto ts = testing::settle_all(b, ps, f);
  REQUIRE(ts.size() == 4);
  auto st = run_game(b, ps, ts, RotationModel::Instantaneous, f);
  CHECK_FALSE(st.lost);
  CHECK(st.pieces_placed == 4);
  CHECK(st.rows_cleared == 2);
  CHECK(st.max_filled_height == 6);
  CHECK(keep_margin(b).rows() == 2 + kNoLossMargin);
  // Without the flag the board is two rows tall and the second square is blocked.
  auto lossy = run_game(b, ps, testing::settle_all(b, {PieceType::Sq}), RotationModel::Instantaneous, {});
  CHECK(lossy.rows_cleared == 2);
}

TEST_CASE("objectives") {
  PlayStats s;
  s.rows_cleared = 262;
  s.tetrises = 3;
  s.max_filled_height = 7;
  s.pieces_placed = 5;
  CHECK(evaluate(s, {ObjectiveKind::RowsCleared, 262}));
  CHECK_FALSE(evaluate(s, {ObjectiveKind::RowsCleared, 263}));
  CHECK(evaluate(PlayStats{}, {ObjectiveKind::RowsCleared, 0}));
  CHECK_FALSE(evaluate(s, {ObjectiveKind::Tetrises, 4}));
  CHECK(evaluate(s, {ObjectiveKind::MaxHeight, 7}));
  CHECK_FALSE(evaluate(s, {ObjectiveKind::MaxHeight, 6}));
  s.lost = true;
  CHECK_FALSE(evaluate(s, {ObjectiveKind::MaxHeight, 7}));
  CHECK(evaluate(s, {ObjectiveKind::PiecesPlaced, 5}));
  for (const char* text : {"rows:3", "tetrises:0", "height:12", "pieces:7"})
    CHECK(objective_string(*parse_objective(text)) == text);
  for (const char* bad : {"rows", "rows:-1", "rows:x", "score:3", "rows:3x"}) CHECK_FALSE(parse_objective(bad));
}

TEST_CASE("determinism") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Board b = testing::random_board(rng, 10, 6, 4);
    std::vector<PieceType> ps;
    for (int k = 0; k < 4; ++k) ps.push_back(kAllPieces[rng() % 7]);
    const auto ts = testing::settle_all(b, ps);
    CHECK(run_game(b, ps, ts, RotationModel::Continuous, {}) == run_game(b, ps, ts, RotationModel::Continuous, {}));
  }
}

TEST_CASE("text formats round-trip") {
  const std::string board = "3 4\n#...\n....\n##.#\n";
  CHECK(render_board(parse_board(board)) == board);
  CHECK(parse_board(board).filled(1, 1));
  CHECK(parse_board(board).filled(3, 1));
  CHECK_THROWS_AS(parse_board("2 3\n...\n"), ParseError);
  CHECK_THROWS_AS(parse_board("1 3\n.x.\n"), ParseError);
  CHECK_THROWS_AS(parse_board("1 3\n....\n"), ParseError);
  const std::string pieces = "Sq LG RG LS RS I T\n";
  CHECK(render_pieces(parse_pieces(pieces)) == pieces);
  CHECK_THROWS_AS(parse_pieces("Sq Q"), ParseError);
  const std::string traj = "cw,left,drop,fix\ndrop,fix\n";
  CHECK(render_trajectories(parse_trajectories(traj)) == traj);
  CHECK_THROWS_AS(parse_trajectories("cw,jump,fix\n"), ParseError);
  for (Move m : kAllMoves) CHECK(parse_move(move_token(m)) == m);
}
