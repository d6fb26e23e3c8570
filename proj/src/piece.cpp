#include "tetris/piece.hpp"

#include <algorithm>

namespace tetris {

namespace {

constexpr Shape kBase[7] = {
    {{{0, 0}, {1, 0}, {0, -1}, {1, -1}}},    // Sq, anchored at upper-left
    {{{0, -1}, {0, 0}, {0, 1}, {-1, -1}}},   // LG
    {{{0, -1}, {0, 0}, {0, 1}, {1, -1}}},    // RG
    {{{0, 1}, {0, 0}, {-1, 0}, {-1, -1}}},   // LS
    {{{-1, 1}, {-1, 0}, {0, 0}, {0, -1}}},   // RS
    {{{-1, 0}, {0, 0}, {1, 0}, {2, 0}}},     // I
    {{{-1, 0}, {0, 0}, {1, 0}, {0, -1}}}};   // T

struct Table {
  Shape s[7][4];
  Table() {
    for (int t = 0; t < 7; ++t) {
      s[t][0] = kBase[t];
      for (int o = 1; o < 4; ++o) {
        for (int k = 0; k < 4; ++k) {
          const Offset p = s[t][o - 1][k];
          // quarter turn clockwise about the anchor
          s[t][o][k] = t == 0 ? p : Offset{p.dy, -p.dx};
        }
      }
    }
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

std::string_view piece_name(PieceType t) {
  switch (t) {
    case PieceType::Sq: return "Sq";
    case PieceType::LG: return "LG";
    case PieceType::RG: return "RG";
    case PieceType::LS: return "LS";
    case PieceType::RS: return "RS";
    case PieceType::I: return "I";
    case PieceType::T: return "T";
  }
  return "?";
}

std::optional<PieceType> parse_piece(std::string_view s) {
  for (PieceType t : kAllPieces)
    if (piece_name(t) == s) return t;
  return std::nullopt;
}

const Shape& shape(PieceType t, int orient) {
  return table().s[static_cast<int>(t)][orient & 3];
}

Cells piece_cells(const PieceState& s) {
  const Shape& sh = shape(s.type, s.orient);
  Cells out;
  for (int k = 0; k < 4; ++k) out[k] = Cell{s.row + sh[k].dy, s.col + sh[k].dx};
  return out;
}

int distinct_orientations(PieceType t) {
  switch (t) {
    case PieceType::Sq: return 1;
    case PieceType::LS:
    case PieceType::RS:
    case PieceType::I: return 2;
    default: return 4;
  }
}

PieceType mirror_piece(PieceType t) {
  switch (t) {
    case PieceType::LG: return PieceType::RG;
    case PieceType::RG: return PieceType::LG;
    case PieceType::LS: return PieceType::RS;
    case PieceType::RS: return PieceType::LS;
    default: return t;
  }
}

Cells sorted_cells(Cells c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace tetris
