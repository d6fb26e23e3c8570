#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tetris/player.hpp"
#include "tetris/solver.hpp"

using namespace tetris;
using testing::board_of;
using testing::random_game;
using testing::random_objective;
using testing::RandomGame;

namespace {

void check_witness(const RandomGame& g, const Objective& o, const SolveResult& r) {
  REQUIRE(r.decision == Decision::Yes);
  REQUIRE(r.witness.size() <= g.game.pieces.size());
  const auto st = run_game(g.game.board, g.game.pieces, r.witness, g.model, g.flags);
  CHECK(st == r.stats);
  CHECK(evaluate(st, o));
}

}  // namespace

TEST_CASE("decision examples") {
  const Board row = board_of({"....", "....", "....", "...."});
  const auto one = plain_game(row, {PieceType::I});
  const auto r = solve_decision(one, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 1});
  CHECK(r.decision == Decision::Yes);
  CHECK(r.stats.rows_cleared == 1);
  CHECK(solve_decision(one, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 2}).decision ==
        Decision::No);
  const auto none = plain_game(row, {});
  CHECK(solve_decision(none, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 0}).decision ==
        Decision::Yes);
  CHECK(brute_force_oracle(none, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 0}).decision ==
        Decision::Yes);
  const auto blocked = plain_game(board_of({"##.#", "#.##"}), {PieceType::Sq, PieceType::T});
  for (long long n : {1, 2}) {
    CHECK(solve_decision(blocked, RotationModel::Instantaneous, {}, {ObjectiveKind::PiecesPlaced, n}).decision ==
          Decision::No);
    CHECK(brute_force_oracle(blocked, RotationModel::Instantaneous, {}, {ObjectiveKind::PiecesPlaced, n}).decision ==
          Decision::No);
  }
  CHECK(decision_name(Decision::BudgetExhausted) != decision_name(Decision::Yes));
}

TEST_CASE("wrong-area micro game is a no") {
  // One bucket-like well that needs eight cells, and only one piece.
  const Board well = board_of({"......", "......", "......", "......", "##..##", "##..##", "##..##", "##..##"});
  const auto g = plain_game(well, {PieceType::Sq});
  const Objective all{ObjectiveKind::RowsCleared, 4};
  CHECK(solve_decision(g, RotationModel::Instantaneous, {}, all).decision == Decision::No);
  CHECK(brute_force_oracle(g, RotationModel::Instantaneous, {}, all).decision == Decision::No);
  const auto two = plain_game(well, {PieceType::Sq, PieceType::Sq});
  CHECK(solve_decision(two, RotationModel::Instantaneous, {}, all).decision == Decision::Yes);
}

TEST_CASE("solver matches the exhaustive oracle on random games") {
  std::mt19937 rng(2024);
  int yes = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const RandomGame g = random_game(rng);
    for (int kind = 0; kind < 4; ++kind) {
      const Objective o = random_objective(rng, kind, g);
      const auto a = solve_decision(g.game, g.model, g.flags, o);
      const auto b = brute_force_oracle(g.game, g.model, g.flags, o);
      INFO("trial ", trial, " ", objective_string(o));
      CHECK(a.decision == b.decision);
      ++total;
      if (a.decision == Decision::Yes) {
        ++yes;
        check_witness(g, o, a);
        check_witness(g, o, b);
      }
    }
  }
  CHECK(total == 800);
  CHECK(yes > 100);
  CHECK(yes < 700);
}

TEST_CASE("parallel root search returns the serial answer") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const RandomGame g = random_game(rng);
    for (int kind = 0; kind < 4; ++kind) {
      const Objective o = random_objective(rng, kind, g);
      const auto s = solve_decision(g.game, g.model, g.flags, o);
      const auto p = solve_decision(g.game, g.model, g.flags, o, {}, false, {4, {}});
      CHECK(s.decision == p.decision);
      CHECK(s.placements == p.placements);
      CHECK(s.witness == p.witness);
    }
  }
}

TEST_CASE("row objectives are monotone") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const RandomGame g = random_game(rng);
    bool prev = true;
    for (long long k = 0; k <= 4; ++k) {
      const bool y =
          solve_decision(g.game, g.model, g.flags, {ObjectiveKind::RowsCleared, k}).decision == Decision::Yes;
      if (!prev) CHECK_FALSE(y);
      prev = y;
    }
  }
}

TEST_CASE("optimization") {
  const auto one = plain_game(Board(6, 4), {PieceType::I});
  const auto r = solve_optimize(one, RotationModel::Instantaneous, {}, ObjectiveKind::RowsCleared);
  CHECK(r.decision == Decision::Yes);
  CHECK(r.value == 1);
  CHECK(run_game(one.board, one.pieces, r.witness, RotationModel::Instantaneous, {}).rows_cleared == 1);
  const auto empty = plain_game(Board(6, 4), {});
  CHECK(solve_optimize(empty, RotationModel::Instantaneous, {}, ObjectiveKind::RowsCleared).value == 0);
  const Board well = board_of({"......", "......", "......", "......", "......", "......", "####.#", "####.#",
                               "####.#", "####.#"});
  const auto tet = plain_game(well, {PieceType::I});
  const auto t = solve_optimize(tet, RotationModel::Instantaneous, {}, ObjectiveKind::Tetrises);
  CHECK(t.value == 1);
  CHECK(run_game(tet.board, tet.pieces, t.witness, RotationModel::Instantaneous, {}).tetrises == 1);
  const auto h = solve_optimize(tet, RotationModel::Instantaneous, {}, ObjectiveKind::MaxHeight);
  CHECK(h.decision == Decision::Yes);
  CHECK(h.value == 4);
  const auto p = solve_optimize(plain_game(Board(4, 4), std::vector<PieceType>(6, PieceType::Sq)),
                                RotationModel::Instantaneous, {}, ObjectiveKind::PiecesPlaced);
  CHECK(p.value == 6);
}

TEST_CASE("optimization agrees with oracle thresholds") {
  std::mt19937 rng(31);
  SearchBudget wide;
  for (int trial = 0; trial < 60; ++trial) {
    const RandomGame g = random_game(rng);
    for (auto kind : {ObjectiveKind::RowsCleared, ObjectiveKind::Tetrises, ObjectiveKind::PiecesPlaced}) {
      const auto r = solve_optimize(g.game, g.model, g.flags, kind);
      CHECK(brute_force_oracle(g.game, g.model, g.flags, {kind, r.value}, wide).decision == Decision::Yes);
      CHECK(brute_force_oracle(g.game, g.model, g.flags, {kind, r.value + 1}, wide).decision == Decision::No);
    }
    const auto h = solve_optimize(g.game, g.model, g.flags, ObjectiveKind::MaxHeight);
    if (h.decision == Decision::Yes) {
      CHECK(brute_force_oracle(g.game, g.model, g.flags, {ObjectiveKind::MaxHeight, h.value}, wide).decision ==
            Decision::Yes);
      if (h.value > 0)
        CHECK(brute_force_oracle(g.game, g.model, g.flags, {ObjectiveKind::MaxHeight, h.value - 1}, wide)
                  .decision == Decision::No);
    }
  }
}

TEST_CASE("guided search clears reduction boards with and without pruning") {
  for (const Instance& in : {Instance{1, 10, {3, 3, 4}}, normalize(Instance{1, 10, {3, 3, 4}})}) {
    const auto g = build_game(in);
    const auto plan = target_placements(g, *find_partition(in));
    const Objective all{ObjectiveKind::RowsCleared, 6 * in.T + 22};
    REQUIRE(prune_allowed(g, all));
    for (bool prune : {false, true}) {
      const auto r = solve_decision(g, RotationModel::Instantaneous, {}, all, {}, prune, {1, plan.targets});
      REQUIRE(r.decision == Decision::Yes);
      CHECK(r.stats.rows_cleared == 6 * in.T + 22);
      CHECK_FALSE(r.stats.lost);
      CHECK(run_game(g.board, g.pieces, r.witness, RotationModel::Instantaneous, {}) == r.stats);
    }
  }
}

TEST_CASE("pruning discards unfillable children") {
  const auto g = build_game(Instance{1, 10, {3, 3, 4}});
  const Objective all{ObjectiveKind::RowsCleared, 82};
  SearchBudget small;
  small.max_nodes = 3000;
  const auto r = solve_decision(g, RotationModel::Instantaneous, {}, all, small, true);
  CHECK(r.pruned > 0);
  CHECK(r.decision != Decision::No);
  const auto plain = solve_decision(g, RotationModel::Instantaneous, {}, all, small, false);
  CHECK(plain.pruned == 0);
}

TEST_CASE("pruning is gated") {
  const auto g = build_game(Instance{1, 10, {3, 3, 4}});
  CHECK_FALSE(prune_allowed(g, {ObjectiveKind::RowsCleared, 81}));
  CHECK_FALSE(prune_allowed(g, {ObjectiveKind::Tetrises, 1}));
  CHECK_FALSE(prune_allowed(plain_game(g.board, g.pieces), {ObjectiveKind::RowsCleared, 82}));
  CHECK_THROWS_AS(solve_decision(g, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 81}, {}, true),
                  std::invalid_argument);
}

TEST_CASE("budgets") {
  const auto g = build_game(Instance{1, 10, {3, 3, 4}});
  SearchBudget tiny;
  tiny.max_nodes = 50;
  const auto r = solve_decision(g, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 82}, tiny);
  CHECK(r.decision == Decision::BudgetExhausted);
  CHECK(r.nodes >= 50);
  SearchBudget bad;
  bad.max_nodes = 0;
  CHECK_THROWS_AS(solve_decision(g, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 1}, bad),
                  BadBudget);
  bad = {};
  bad.max_seconds = -1;
  CHECK_THROWS_AS(solve_optimize(g, RotationModel::Instantaneous, {}, ObjectiveKind::RowsCleared, bad), BadBudget);
  CHECK_THROWS_AS(brute_force_oracle(g, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, 1}),
                  OracleCapExceeded);
  const auto many = plain_game(Board(4, 4), std::vector<PieceType>(9, PieceType::Sq));
  CHECK_THROWS_AS(brute_force_oracle(many, RotationModel::Instantaneous, {}, {ObjectiveKind::PiecesPlaced, 1}),
                  OracleCapExceeded);
  CHECK_THROWS_AS(solve_decision(many, RotationModel::Instantaneous, {}, {ObjectiveKind::RowsCleared, -1}),
                  std::invalid_argument);
}
