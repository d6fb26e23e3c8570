#include "tetris/player.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <sstream>

namespace tetris {

Partition parse_partition(const std::string& text) {
  std::istringstream in(text);
  Partition p;
  long long v;
  while (in >> v) {
    if (v < 1 || v > 1'000'000) throw std::invalid_argument("bucket index out of range");
    p.bucket.push_back(static_cast<int>(v));
  }
  if (!in.eof()) throw std::invalid_argument("partition entries must be integers");
  return p;
}

std::string render_partition(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.bucket.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p.bucket[i]);
  }
  return out + "\n";
}

bool partition_valid(const Instance& inst, const Partition& p) {
  if (p.bucket.size() != inst.a.size()) return false;
  std::vector<long long> sum(inst.s + 1, 0);
  std::vector<int> count(inst.s + 1, 0);
  for (std::size_t i = 0; i < p.bucket.size(); ++i) {
    const int b = p.bucket[i];
    if (b < 1 || b > inst.s) return false;
    sum[b] += inst.a[i];
    count[b] += 1;
  }
  for (int b = 1; b <= inst.s; ++b)
    if (sum[b] != inst.T || count[b] != 3) return false;
  return true;
}

namespace {

bool assign(const Instance& inst, std::size_t i, std::vector<int>& bucket, std::vector<long long>& sum,
            std::vector<int>& count) {
  if (i == inst.a.size()) return true;
  bool tried_empty = false;
  for (int b = 1; b <= inst.s; ++b) {
    if (count[b] == 3 || sum[b] + inst.a[i] > inst.T) continue;
    if (count[b] == 0) {
      if (tried_empty) continue;
      tried_empty = true;
    }
    if (count[b] == 2 && sum[b] + inst.a[i] != inst.T) continue;
    bucket[i] = b;
    sum[b] += inst.a[i];
    count[b] += 1;
    if (assign(inst, i + 1, bucket, sum, count)) return true;
    sum[b] -= inst.a[i];
    count[b] -= 1;
  }
  return false;
}

}  // namespace

std::optional<Partition> find_partition(const Instance& inst) {
  if (static_cast<int>(inst.a.size()) != 3 * inst.s) throw std::invalid_argument("instance needs 3s numbers");
  if (static_cast<int>(inst.a.size()) > kMaxPartitionNumbers)
    throw std::length_error("too many numbers for exhaustive partition search");
  if (std::accumulate(inst.a.begin(), inst.a.end(), 0LL) != inst.s * inst.T) return std::nullopt;
  Partition p;
  p.bucket.assign(inst.a.size(), 0);
  std::vector<long long> sum(inst.s + 1, 0);
  std::vector<int> count(inst.s + 1, 0);
  if (!assign(inst, 0, p.bucket, sum, count)) return std::nullopt;
  return p;
}

std::optional<PieceState> state_for_cells(PieceType t, const Cells& cells) {
  const Cells want = sorted_cells(cells);
  for (int o = 0; o < 4; ++o) {
    for (const Offset& off : shape(t, o)) {
      PieceState s{t, o, want[0].row - off.dy, want[0].col - off.dx, true};
      if (sorted_cells(piece_cells(s)) == want) return s;
    }
  }
  return std::nullopt;
}

namespace {

PieceState fixed_state(PieceType t, int orient, int row, int col) { return PieceState{t, orient, row, col, true}; }

// Fixed states in payload coordinates of the unmirrored game.
struct Planner {
  const GameMeta& m;
  std::vector<PieceState> out;

  void at(PieceType t, int orient, int prow, int col) {
    out.push_back(fixed_state(t, orient, payload_to_board_row(m, prow), col));
  }

  // Bucket base b: columns 1-2 are full through b+4 and column 3 through b.
  void initiator(int c, int b) {
    at(PieceType::I, 1, b + 3, c + 2);
    at(PieceType::LG, 1, b + 5, c + 3);
    at(PieceType::Sq, 0, b + 6, c);
  }
  // Bucket full through b+6.
  void filler(int c, int b) {
    at(PieceType::LG, 1, b + 7, c + 1);
    at(PieceType::LS, 1, b + 8, c + 1);
    at(PieceType::LG, 3, b + 10, c + 1);
    at(PieceType::LG, 1, b + 11, c + 3);
    at(PieceType::Sq, 0, b + 12, c);
  }
  void terminator(int c, int b) {
    at(PieceType::Sq, 0, b + 8, c);
    at(PieceType::Sq, 0, b + 10, c);
  }
};

}  // namespace

PlacementPlan target_placements(const GeneratedGame& g, const Partition& p) {
  const GameMeta& m = g.meta;
  Instance inst{m.s, m.T, {}};
  if (static_cast<int>(p.bucket.size()) != 3 * m.s) throw std::invalid_argument("partition size does not match game");
  // Recover the numbers from the piece sequence.
  {
    std::size_t i = 0;
    const auto& ps = g.pieces;
    for (int k = 0; k < 3 * m.s; ++k) {
      i += 3;
      long long a = 0;
      while (i + 5 <= ps.size() && ps[i] == (m.mirrored ? PieceType::RG : PieceType::LG) &&
             ps[i + 1] != PieceType::Sq) {
        a += 1;
        i += 5;
      }
      i += 2;
      inst.a.push_back(a);
    }
  }
  if (!partition_valid(inst, p)) throw std::invalid_argument("partition is not valid for this game");

  Planner pl{m, {}};
  std::vector<int> base(m.s + 1, 0);
  for (int k = 0; k < 3 * m.s; ++k) {
    const int j = p.bucket[k];
    const int c = bucket_first_col(m, j);
    pl.initiator(c, base[j]);
    for (long long f = 0; f < inst.a[k]; ++f) pl.filler(c, base[j] + 6 * static_cast<int>(f));
    base[j] += 6 * static_cast<int>(inst.a[k]);
    pl.terminator(c, base[j]);
    base[j] += 6;
  }
  const int P = m.payload_rows;
  for (int j = 1; j <= m.s; ++j) pl.at(PieceType::I, 1, P - 1, bucket_first_col(m, j) + 2);
  const int L = m.lock_first_col;
  pl.at(PieceType::RG, 1, P, L + 1);
  for (long long k = 0; k < 3 * m.T / 2 + 5; ++k) pl.at(PieceType::I, 1, 3, L + 2);

  if (m.variant == "tetrises") {
    pl.out.push_back(fixed_state(PieceType::I, 1, 3, 6));
  } else if (m.variant != "base") {
    const int r = static_cast<int>(m.reservoir_rows);
    const int cols = 6 * m.s + 7;
    pl.out.push_back(fixed_state(PieceType::RG, 1, r + 2, 6 * m.s + 6));
    const std::size_t squares = g.pieces.size() - pl.out.size();
    const int per_pair = (cols - 1) / 2;
    for (std::size_t k = 0; k < squares; ++k)
      pl.out.push_back(fixed_state(PieceType::Sq, 0, 2, 2 + 2 * static_cast<int>(k % per_pair)));
  }

  if (pl.out.size() != g.pieces.size()) throw std::logic_error("placement plan does not cover the piece sequence");
  if (m.mirrored) {
    const int cols = g.board.cols();
    for (PieceState& s : pl.out) {
      Cells cs = piece_cells(s);
      for (Cell& c : cs) c.col = cols + 1 - c.col;
      auto ms = state_for_cells(mirror_piece(s.type), cs);
      if (!ms) throw std::logic_error("mirrored placement has no state");
      s = *ms;
    }
  }
  for (std::size_t i = 0; i < pl.out.size(); ++i)
    if (pl.out[i].type != g.pieces[i]) throw std::logic_error("placement plan piece mismatch");
  return PlacementPlan{std::move(pl.out)};
}

Trajectory plan_path(const Board& b, PieceType piece, const PieceState& target, RotationModel m,
                     const RuleFlags& flags) {
  const Cells goal = sorted_cells(piece_cells(target));
  if (!b.fits(goal)) throw Unreachable("target overlaps filled cells");
  if (entry_blocked(piece, b)) throw Unreachable("piece cannot enter");
  const int budget = flags.agility_limit ? *flags.agility_limit : 0;
  const int nu = budget + 1;
  const int pad = 4;
  const int R = b.rows() + 2 * pad, C = b.cols() + 2 * pad;
  auto key = [&](const PieceState& s, int used) {
    return ((static_cast<std::size_t>(s.row + pad) * C + (s.col + pad)) * 4 + (s.orient & 3)) * nu + used;
  };
  const std::size_t n = static_cast<std::size_t>(R) * C * 4 * nu;
  struct Node {
    PieceState s;
    int used;
  };
  std::vector<std::int64_t> parent(n, -2);
  std::vector<std::int8_t> via(n, -1);
  std::deque<Node> q;
  const PieceState start = initial_state(piece, b);
  const std::size_t k0 = key(start, 0);
  parent[k0] = -1;
  q.push_back({start, 0});
  while (!q.empty()) {
    Node cur = q.front();
    q.pop_front();
    const std::size_t kc = key(cur.s, cur.used);
    if (sorted_cells(piece_cells(cur.s)) == goal && move_legal(cur.s, b, m, Move::Fix)) {
      Trajectory t{Move::Fix};
      std::int64_t k = static_cast<std::int64_t>(kc);
      while (parent[k] != -1) {
        t.push_back(kAllMoves[via[k]]);
        k = parent[k];
      }
      std::reverse(t.begin(), t.end());
      return t;
    }
    for (int mi = 0; mi < 5; ++mi) {
      const Move mv = kAllMoves[mi];
      const bool counted = mv != Move::Drop;
      if (flags.agility_limit && counted && cur.used >= budget) continue;
      if (!move_legal(cur.s, b, m, mv)) continue;
      PieceState nx = apply_move(cur.s, b, m, mv);
      int nused = 0;
      if (flags.agility_limit) nused = counted ? cur.used + 1 : 0;
      if (nx.row + pad < 0 || nx.row + pad >= R || nx.col + pad < 0 || nx.col + pad >= C) continue;
      const std::size_t kn = key(nx, nused);
      if (parent[kn] != -2) continue;
      parent[kn] = static_cast<std::int64_t>(kc);
      via[kn] = static_cast<std::int8_t>(mi);
      q.push_back({nx, nused});
    }
  }
  throw Unreachable("no trajectory reaches the target placement");
}

long long clearable_rows(const GeneratedGame& g) {
  const GameMeta& m = g.meta;
  if (m.variant == "base") return m.payload_rows;
  if (m.variant == "tetrises") return m.payload_rows + 4;
  return m.payload_rows + 2 + m.reservoir_rows;
}

Synthesis synthesize_and_verify(const GeneratedGame& g, const Partition& p, RotationModel m,
                                const RuleFlags& flags) {
  if (!g.meta.materialized) throw std::invalid_argument("game board was not built: " + g.meta.note);
  const PlacementPlan plan = target_placements(g, p);
  Synthesis out;
  Board cur = g.board;
  for (std::size_t i = 0; i < g.pieces.size(); ++i) {
    Trajectory t = plan_path(cur, g.pieces[i], plan.targets[i], m, flags);
    std::optional<PieceType> next;
    if (i + 1 < g.pieces.size()) next = g.pieces[i + 1];
    PieceOutcome o = run_trajectory(cur, g.pieces[i], t, m, flags, next, i);
    if (o.next_blocked) throw std::logic_error("planned play loses at piece " + std::to_string(i));
    cur = std::move(o.board);
    out.trajectories.push_back(std::move(t));
  }
  out.stats = run_game(g.board, g.pieces, out.trajectories, m, flags);
  out.expected_rows = clearable_rows(g);
  if (out.stats.lost) throw std::logic_error("verified play lost");
  if (out.stats.rows_cleared != out.expected_rows)
    throw std::logic_error("verified play cleared " + std::to_string(out.stats.rows_cleared) + " rows, expected " +
                           std::to_string(out.expected_rows));
  if (out.stats.max_filled_height > g.board.rows()) throw std::logic_error("verified play exceeded the board");
  return out;
}

}  // namespace tetris
