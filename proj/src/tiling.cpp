#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "tetris/analysis.hpp"

namespace tetris {

std::vector<Cell> open_cells(const BucketRegion& r, int row_lo, int row_hi) {
  std::vector<Cell> out;
  for (int row = std::max(1, row_lo); row <= std::min(r.rows(), row_hi); ++row)
    for (int c = 1; c <= 6; ++c)
      if (r.cells.open(row, c)) out.push_back({row, c});
  return out;
}

namespace {

struct Tiler {
  std::vector<std::vector<std::uint64_t>> by_cell;  // placements whose lowest cell is k
  std::unordered_set<std::uint64_t> dead;

  bool solve(std::uint64_t remaining) {
    if (!remaining) return true;
    if (dead.count(remaining)) return false;
    const int k = __builtin_ctzll(remaining);
    for (std::uint64_t p : by_cell[k])
      if ((p & remaining) == p && solve(remaining & ~p)) return true;
    dead.insert(remaining);
    return false;
  }
};

}  // namespace

bool tiling_oracle(const std::vector<Cell>& region, const std::vector<PieceType>& pieceset, int cap) {
  std::vector<Cell> cells = region;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (static_cast<int>(cells.size()) > cap || cells.size() > 64)
    throw CapExceeded("region has " + std::to_string(cells.size()) + " cells, cap is " + std::to_string(cap));
  if (cells.size() % 4) return false;
  if (cells.empty()) return true;
  std::map<Cell, int> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<int>(i);

  Tiler t;
  t.by_cell.resize(cells.size());
  std::unordered_set<std::uint64_t> seen;
  for (PieceType p : pieceset)
    for (int o = 0; o < 4; ++o)
      for (const Cell& anchor : cells)
        for (const Offset& off : shape(p, o)) {
          // Place the piece so this square lands on the anchor cell.
          PieceState s{p, o, anchor.row - off.dy, anchor.col - off.dx, false};
          std::uint64_t mask = 0;
          bool ok = true;
          for (const Cell& c : piece_cells(s)) {
            auto it = index.find(c);
            if (it == index.end()) {
              ok = false;
              break;
            }
            mask |= std::uint64_t{1} << it->second;
          }
          if (!ok || !seen.insert(mask).second) continue;
          t.by_cell[__builtin_ctzll(mask)].push_back(mask);
        }
  return t.solve(cells.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells.size()) - 1);
}

}  // namespace tetris
