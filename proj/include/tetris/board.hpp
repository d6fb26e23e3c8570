#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tetris/piece.hpp"

namespace tetris {

// Occupancy grid. Rows count 1..rows from the bottom, columns 1..cols from
// the left. Queries outside the grid report filled.
class Board {
 public:
  Board() = default;
  Board(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool filled(int r, int c) const {
    if (r < 1 || r > rows_ || c < 1 || c > cols_) return true;
    return cells_[idx(r, c)] != 0;
  }
  bool filled(Cell c) const { return filled(c.row, c.col); }
  bool open(int r, int c) const { return !filled(r, c); }
  bool open(Cell c) const { return !filled(c); }
  bool inside(int r, int c) const {
    return r >= 1 && r <= rows_ && c >= 1 && c <= cols_;
  }

  void set(int r, int c, bool v = true);
  void set(Cell c, bool v = true) { set(c.row, c.col, v); }

  bool fits(const Cells& cs) const {
    for (const Cell& c : cs)
      if (filled(c)) return false;
    return true;
  }

  int row_count(int r) const;
  bool row_full(int r) const { return row_count(r) == cols_; }
  // Highest row holding a filled cell, 0 when empty.
  int height() const;
  long long filled_count() const;
  // No full row and no empty row beneath a filled cell.
  bool legal() const;

  // Removes full rows, shifting the rows above down; returns how many.
  int clear_full_rows();

  friend bool operator==(const Board& a, const Board& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

  const std::vector<std::uint8_t>& raw() const { return cells_; }

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r - 1) * cols_ + (c - 1);
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

struct BoardHash {
  std::size_t operator()(const Board& b) const noexcept;
};

// Copy of columns [c0, c1] of the board.
Board sub_columns(const Board& b, int c0, int c1);
Board mirror_board(const Board& b);

}  // namespace tetris
