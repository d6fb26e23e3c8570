#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetris/game.hpp"
#include "tetris/reduction.hpp"

namespace tetris {

struct SearchBudget {
  long long max_nodes = 5'000'000;
  double max_seconds = 600.0;
  // Oracle limits: board cells and pieces.
  int oracle_cells = 64;
  int oracle_pieces = 8;
};

// Budget with a non-positive field.
class BadBudget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OracleCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class Decision { Yes, No, BudgetExhausted };

std::string decision_name(Decision d);

struct SolveResult {
  Decision decision = Decision::No;
  // Fixed placement per piece and the move scripts that reach them.
  std::vector<PieceState> placements;
  std::vector<Trajectory> witness;
  PlayStats stats;       // replayed stats of the witness
  long long value = 0;   // optimized metric
  long long nodes = 0;
  long long pruned = 0;  // children discarded by the unfillability check
};

struct SolveOptions {
  int jobs = 1;
  // Placements tried first, one per piece, matched by covered cells.
  std::vector<PieceState> guide;
};

// Pruning needs a base reduction board and the full-clear objective.
bool prune_allowed(const GeneratedGame& g, const Objective& obj);

SolveResult solve_decision(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, const Objective& obj,
                           const SearchBudget& budget = {}, bool prune = false, const SolveOptions& opts = {});

// Exhaustive layer-by-layer search with no ordering and no pruning.
SolveResult brute_force_oracle(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, const Objective& obj,
                               const SearchBudget& budget = {});

// Largest rows, tetrises or pieces placed; for MaxHeight the smallest peak
// over complete plays without a loss (decision No when none exists).
SolveResult solve_optimize(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, ObjectiveKind metric,
                           const SearchBudget& budget = {});

// Game with no reduction metadata.
GeneratedGame plain_game(const Board& b, const std::vector<PieceType>& pieces);

}  // namespace tetris
