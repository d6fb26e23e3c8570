#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/piece.hpp"

namespace tetris {

enum class RotationModel { Instantaneous, Continuous, TetrisObserved };

inline constexpr RotationModel kAllModels[3] = {
    RotationModel::Instantaneous, RotationModel::Continuous,
    RotationModel::TetrisObserved};

std::string_view model_name(RotationModel m);
// Accepts inst|cont|tetris.
std::optional<RotationModel> parse_model(std::string_view s);

// dir is +1 for a clockwise quarter turn, -1 for counterclockwise.
// Where the piece would end up if the rotation were legal.
PieceState rotation_target(RotationModel m, const PieceState& s, int dir);

// Cells that must be open for the rotation to be legal.
std::vector<Cell> rotation_requirement(RotationModel m, const PieceState& s, int dir);

bool rotation_legal(RotationModel m, const PieceState& s, int dir, const Board& b);

// Rotated state when legal, the input unchanged otherwise.
PieceState rotate(RotationModel m, const PieceState& s, int dir, const Board& b);

// Every cell that a continuous quarter turn passes over, sampled every
// step_deg degrees. A cell counts when a rotating square overlaps it with
// positive area.
std::vector<Cell> swept_cells(const PieceState& s, int dir, double step_deg = 1.0);

// Side of the bounding box used by the observed rotation model.
int box_size(PieceType t);

}  // namespace tetris
