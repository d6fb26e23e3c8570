#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetris/game.hpp"
#include "tetris/reduction.hpp"

namespace tetris {

// bucket[i] is the 1-based bucket receiving number i.
struct Partition {
  std::vector<int> bucket;
  friend bool operator==(const Partition&, const Partition&) = default;
};

Partition parse_partition(const std::string& text);
std::string render_partition(const Partition& p);

bool partition_valid(const Instance& inst, const Partition& p);

inline constexpr int kMaxPartitionNumbers = 45;
// Exhaustive search; nullopt when no partition exists.
std::optional<Partition> find_partition(const Instance& inst);

struct PlacementPlan {
  std::vector<PieceState> targets;  // one fixed state per piece
};

PlacementPlan target_placements(const GeneratedGame& g, const Partition& p);

// State of type t covering exactly these cells, if one exists.
std::optional<PieceState> state_for_cells(PieceType t, const Cells& cells);

class Unreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest move sequence from the entry state to a fix covering the target's
// cells.
Trajectory plan_path(const Board& b, PieceType piece, const PieceState& target, RotationModel m,
                     const RuleFlags& flags = {});

struct Synthesis {
  std::vector<Trajectory> trajectories;
  PlayStats stats;
  long long expected_rows = 0;
};

long long clearable_rows(const GeneratedGame& g);

Synthesis synthesize_and_verify(const GeneratedGame& g, const Partition& p, RotationModel m,
                                const RuleFlags& flags = {});

}  // namespace tetris
