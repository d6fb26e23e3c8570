#include "tetris/board.hpp"

#include <stdexcept>

namespace tetris {

Board::Board(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("board dimensions must be positive");
  cells_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

void Board::set(int r, int c, bool v) {
  if (!inside(r, c)) throw std::out_of_range("cell outside board");
  cells_[idx(r, c)] = v ? 1 : 0;
}

int Board::row_count(int r) const {
  int n = 0;
  for (int c = 1; c <= cols_; ++c) n += cells_[idx(r, c)];
  return n;
}

int Board::height() const {
  for (int r = rows_; r >= 1; --r)
    if (row_count(r) > 0) return r;
  return 0;
}

long long Board::filled_count() const {
  long long n = 0;
  for (auto v : cells_) n += v;
  return n;
}

bool Board::legal() const {
  bool seen_empty = false;
  for (int r = 1; r <= rows_; ++r) {
    const int n = row_count(r);
    if (n == cols_) return false;
    if (n == 0) seen_empty = true;
    else if (seen_empty) return false;
  }
  return true;
}

int Board::clear_full_rows() {
  int dst = 1;
  int cleared = 0;
  for (int r = 1; r <= rows_; ++r) {
    if (row_full(r)) {
      ++cleared;
      continue;
    }
    if (dst != r)
      for (int c = 1; c <= cols_; ++c) cells_[idx(dst, c)] = cells_[idx(r, c)];
    ++dst;
  }
  for (int r = dst; r <= rows_; ++r)
    for (int c = 1; c <= cols_; ++c) cells_[idx(r, c)] = 0;
  return cleared;
}

std::size_t BoardHash::operator()(const Board& b) const noexcept {
  std::size_t h = static_cast<std::size_t>(b.rows()) * 131 + b.cols();
  for (auto v : b.raw()) h = h * 1099511628211ULL + v + 0x9e37;
  return h;
}

Board sub_columns(const Board& b, int c0, int c1) {
  Board out(b.rows(), c1 - c0 + 1);
  for (int r = 1; r <= b.rows(); ++r)
    for (int c = c0; c <= c1; ++c)
      if (b.filled(r, c)) out.set(r, c - c0 + 1);
  return out;
}

Board mirror_board(const Board& b) {
  Board out(b.rows(), b.cols());
  for (int r = 1; r <= b.rows(); ++r)
    for (int c = 1; c <= b.cols(); ++c)
      if (b.filled(r, c)) out.set(r, b.cols() + 1 - c);
  return out;
}

}  // namespace tetris
