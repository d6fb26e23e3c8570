#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tetris {

enum class PieceType { Sq, LG, RG, LS, RS, I, T };

inline constexpr std::array<PieceType, 7> kAllPieces = {
    PieceType::Sq, PieceType::LG, PieceType::RG, PieceType::LS,
    PieceType::RS, PieceType::I,  PieceType::T};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

using Cells = std::array<Cell, 4>;

// Offset of one square from the anchor; dx is columns to the right, dy rows up.
struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

using Shape = std::array<Offset, 4>;

// orientation counts clockwise quarter turns from the base orientation.
struct PieceState {
  PieceType type = PieceType::Sq;
  int orient = 0;
  int row = 0;
  int col = 0;
  bool fixed = false;
  friend bool operator==(const PieceState&, const PieceState&) = default;
};

std::string_view piece_name(PieceType t);
std::optional<PieceType> parse_piece(std::string_view s);

// Degrees clockwise from base: 0, 90, 180, 270.
inline int orient_degrees(int orient) { return ((orient % 4 + 4) % 4) * 90; }

// Offsets of the four squares of a piece in the given orientation relative to
// its anchor. The anchor is the center square, except for Sq where it is the
// upper-left square.
const Shape& shape(PieceType t, int orient);

Cells piece_cells(const PieceState& s);

// Number of distinct cell patterns (up to translation) a piece has.
int distinct_orientations(PieceType t);

PieceType mirror_piece(PieceType t);

// Sorted copy, used to compare placements by covered cells.
Cells sorted_cells(Cells c);

struct StateHash {
  std::size_t operator()(const PieceState& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.type);
    h = h * 5 + static_cast<std::size_t>(s.orient & 3);
    h = h * 1009 + static_cast<std::size_t>(s.row + 64);
    h = h * 1009 + static_cast<std::size_t>(s.col + 64);
    return h * 2 + (s.fixed ? 1 : 0);
  }
};

}  // namespace tetris
