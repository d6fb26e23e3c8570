#include <algorithm>
#include <deque>
#include <set>

#include "tetris/analysis.hpp"

namespace tetris {

namespace {

struct StateSpace {
  int pad = 4;
  int R, C, nu;
  std::vector<char> seen;
  StateSpace(const Board& b, int budget) : R(b.rows() + 2 * pad), C(b.cols() + 2 * pad), nu(budget + 1) {
    seen.assign(static_cast<std::size_t>(R) * C * 4 * nu, 0);
  }
  bool inside(const PieceState& s) const {
    return s.row + pad >= 0 && s.row + pad < R && s.col + pad >= 0 && s.col + pad < C;
  }
  std::size_t key(const PieceState& s, int used) const {
    return ((static_cast<std::size_t>(s.row + pad) * C + (s.col + pad)) * 4 + (s.orient & 3)) * nu + used;
  }
};

}  // namespace

std::vector<PieceState> reachable_states(const Board& b, PieceType piece, RotationModel m, const RuleFlags& flags) {
  std::vector<PieceState> out;
  if (entry_blocked(piece, b)) return out;
  const int budget = flags.agility_limit ? *flags.agility_limit : 0;
  StateSpace sp(b, budget);
  std::vector<char> listed(sp.seen.size() / sp.nu, 0);
  struct Node {
    PieceState s;
    int used;
  };
  std::deque<Node> q;
  const PieceState start = initial_state(piece, b);
  sp.seen[sp.key(start, 0)] = 1;
  q.push_back({start, 0});
  while (!q.empty()) {
    const Node cur = q.front();
    q.pop_front();
    const std::size_t pos = sp.key(cur.s, 0) / sp.nu;
    if (!listed[pos]) {
      listed[pos] = 1;
      out.push_back(cur.s);
      if (move_legal(cur.s, b, m, Move::Fix)) out.push_back(apply_move(cur.s, b, m, Move::Fix));
    }
    for (int mi = 0; mi < 5; ++mi) {
      const Move mv = kAllMoves[mi];
      const bool counted = mv != Move::Drop;
      if (flags.agility_limit && counted && cur.used >= budget) continue;
      if (!move_legal(cur.s, b, m, mv)) continue;
      const PieceState nx = apply_move(cur.s, b, m, mv);
      if (!sp.inside(nx)) continue;
      const int nused = flags.agility_limit ? (counted ? cur.used + 1 : 0) : 0;
      const std::size_t k = sp.key(nx, nused);
      if (sp.seen[k]) continue;
      sp.seen[k] = 1;
      q.push_back({nx, nused});
    }
  }
  return out;
}

std::vector<PieceState> reachable_fixed(const Board& b, PieceType piece, RotationModel m, const RuleFlags& flags) {
  std::vector<PieceState> out;
  std::set<Cells> cover;
  for (const PieceState& s : reachable_states(b, piece, m, flags))
    if (s.fixed && cover.insert(sorted_cells(piece_cells(s))).second) out.push_back(s);
  return out;
}

Board local_board(const BucketRegion& r) {
  const int H = r.rows();
  Board b(H + kLocalStaging, 6 + 2 * kLocalPad + 0);
  const int W = b.cols();
  for (int row = 1; row <= H; ++row) {
    for (int c = 1; c <= kLocalPad; ++c) b.set(row, c);
    for (int c = kLocalPad + 7; c <= W; ++c) b.set(row, c);
    for (int c = 1; c <= 6; ++c)
      if (r.cells.filled(row, c)) b.set(row, kLocalPad + c);
  }
  return b;
}

BucketRegion region_from_local(const Board& local, int rows) {
  BucketRegion r;
  r.cells = Board(rows, 6);
  for (int row = 1; row <= rows; ++row)
    for (int c = 1; c <= 6; ++c) r.cells.set(row, c, local.filled(row, kLocalPad + c));
  return r;
}

std::vector<FixedPlacement> enumerate_fixed_placements(const BucketRegion& r, PieceType piece, RotationModel m,
                                                       const RuleFlags& flags) {
  if (r.rows() > kMaxRegionRows) throw CapExceeded("bucket region taller than " + std::to_string(kMaxRegionRows));
  const Board local = local_board(r);
  std::vector<FixedPlacement> out;
  for (const PieceState& s : reachable_fixed(local, piece, m, flags)) {
    FixedPlacement p;
    p.state = s;
    for (const Cell& c : piece_cells(s))
      if (c.row > r.rows() || c.col <= kLocalPad || c.col > kLocalPad + 6) p.outside = true;
    p.result = region_from_local(with_piece(local, s), r.rows());
    p.result.bucket = r.bucket;
    p.result.notch_phase = r.notch_phase;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace tetris
