#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "tetris/analysis.hpp"
#include "tetris/textio.hpp"

namespace tetris {

namespace {

using Pred = std::function<bool(const PieceState&)>;

struct Violation {
  PieceState state;
  Trajectory moves;
};

struct StateLess {
  bool operator()(const PieceState& a, const PieceState& b) const {
    return std::tie(a.row, a.col, a.orient) < std::tie(b.row, b.col, b.orient);
  }
};

// Breadth-first search over unfixed states from start; returns the first
// state satisfying bad, with the moves that reach it.
std::optional<Violation> search(const Board& b, const PieceState& start, RotationModel m, const Pred& bad) {
  std::map<PieceState, std::pair<PieceState, int>, StateLess> parent;
  std::deque<PieceState> q{start};
  parent.emplace(start, std::make_pair(start, -1));
  while (!q.empty()) {
    const PieceState s = q.front();
    q.pop_front();
    if (bad(s)) {
      Violation v{s, {}};
      for (PieceState k = s; parent.at(k).second >= 0; k = parent.at(k).first)
        v.moves.push_back(kAllMoves[parent.at(k).second]);
      std::reverse(v.moves.begin(), v.moves.end());
      return v;
    }
    for (int mi = 0; mi < 5; ++mi) {
      if (!move_legal(s, b, m, kAllMoves[mi])) continue;
      const PieceState n = apply_move(s, b, m, kAllMoves[mi]);
      if (n.row < -4 || n.row > b.rows() + 4) continue;
      if (parent.emplace(n, std::make_pair(s, mi)).second) q.push_back(n);
    }
  }
  return std::nullopt;
}

std::string show(const Board& b, const Violation& v, const std::string& what) {
  std::ostringstream out;
  out << what << "\n" << render_board(b, v.state) << "moves:";
  for (Move mv : v.moves) out << ' ' << move_token(mv);
  out << "\n";
  return out.str();
}

bool covers(const PieceState& s, const std::function<bool(Cell)>& f) {
  for (const Cell& c : piece_cells(s))
    if (f(c)) return true;
  return false;
}

// Scenario boards hold one bucket in columns 3..8 with filled walls beside
// it below the staging rows. Bucket column c is board column c + 2.
constexpr int kPad = 2;
constexpr int kRows = 20;
constexpr int kStage = 8;

struct Scenario {
  Board b;
  int top;  // highest bucket row
  explicit Scenario(int rows = kRows) : b(rows + kStage, 6 + 2 * kPad), top(rows) {
    for (int r = 1; r <= rows; ++r) {
      for (int c = 1; c <= kPad; ++c) b.set(r, c);
      for (int c = kPad + 7; c <= b.cols(); ++c) b.set(r, c);
      b.set(r, kPad + 6);
      if (r % 6 != 5) {
        b.set(r, kPad + 4);
        b.set(r, kPad + 5);
      }
    }
  }
  void fill(int r, int bc) { b.set(r, bc + kPad); }
  static bool bucket_cell(Cell c, int bc) { return c.col == bc + kPad; }
};

ConditionResult no_jumps(RotationModel m) {
  ConditionResult res{"no jumps between regions", true, 0, {}};
  // Every rotation of every piece keeps some cell.
  for (PieceType t : kAllPieces)
    for (int o = 0; o < 4; ++o)
      for (int dir : {+1, -1}) {
        res.scenarios += 1;
        const PieceState s{t, o, 20, 20, false};
        const PieceState n = rotation_target(m, s, dir);
        const Cells a = piece_cells(s), c = piece_cells(n);
        bool shared = false;
        for (const Cell& x : a)
          for (const Cell& y : c)
            if (x == y) shared = true;
        if (!shared && res.pass) {
          res.pass = false;
          res.counterexample = std::string(piece_name(t)) + " orient " + std::to_string(o) + " dir " +
                               std::to_string(dir) + " keeps no cell\n";
        }
      }
  // Two capped buckets side by side; the left one hides a sealed pocket.
  Board b(12, 13);
  for (int r = 1; r <= 12; ++r)
    for (int c = 1; c <= 13; ++c) b.set(r, c);
  auto open = [&](int r0, int r1, int c0, int c1) {
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) b.set(r, c, false);
  };
  open(2, 10, 2, 6);
  open(2, 10, 8, 12);
  // Pocket at (3, 4) sealed on all four sides.
  b.set(2, 4);
  b.set(3, 3);
  b.set(3, 5);
  b.set(4, 4);
  // Region of the left bucket reachable through open cells.
  Board region(b.rows(), b.cols());
  std::deque<Cell> q{{10, 2}};
  region.set(10, 2);
  while (!q.empty()) {
    Cell c = q.front();
    q.pop_front();
    const Cell nb[4] = {{c.row + 1, c.col}, {c.row - 1, c.col}, {c.row, c.col + 1}, {c.row, c.col - 1}};
    for (Cell n : nb)
      if (b.open(n) && region.open(n)) {
        region.set(n);
        q.push_back(n);
      }
  }
  for (PieceType t : kAllPieces)
    for (int o = 0; o < 4; ++o)
      for (int r = 1; r <= b.rows(); ++r)
        for (int c = 1; c <= b.cols(); ++c) {
          const PieceState s{t, o, r, c, false};
          if (!b.fits(piece_cells(s)) || covers(s, [&](Cell x) { return region.open(x); })) continue;
          res.scenarios += 1;
          auto v = search(b, s, m, [&](const PieceState& p) { return covers(p, [&](Cell x) { return region.open(x); }); });
          if (v && res.pass) {
            res.pass = false;
            res.counterexample = show(b, *v, "piece left its region");
          }
        }
  return res;
}

ConditionResult lg_spurned(RotationModel m) {
  ConditionResult res{"LG stays out of spurned notches", true, 0, {}};
  for (int h : {5, 11})
    for (bool floor : {false, true}) {
      Scenario sc;
      sc.fill(h, 2);
      if (floor)
        for (int r = 1; r < h; ++r)
          for (int c = 1; c <= 3; ++c) sc.fill(r, c);
      res.scenarios += 1;
      const PieceState start = initial_state(PieceType::LG, sc.b);
      auto v = search(sc.b, start, m, [&](const PieceState& p) {
        return covers(p, [&](Cell x) { return x.row == h && (Scenario::bucket_cell(x, 4) || Scenario::bucket_cell(x, 5)); });
      });
      if (v && res.pass) {
        res.pass = false;
        res.counterexample = show(sc.b, *v, "LG reached the notch in row " + std::to_string(h));
      }
    }
  return res;
}

ConditionResult balcony(RotationModel m, const std::vector<PieceType>& pieces, std::string name) {
  ConditionResult res{std::move(name), true, 0, {}};
  for (int h = 2; h <= 16; ++h) {
    for (int i = 1; i <= 3; ++i) {
      Scenario sc;
      for (int c = 1; c <= 3; ++c)
        if (c != i) sc.fill(h, c);
      for (PieceType t : pieces) {
        res.scenarios += 1;
        auto v = search(sc.b, initial_state(t, sc.b), m, [&](const PieceState& p) {
          return covers(p, [&](Cell x) {
            if (x.row > h || x.col <= kPad || x.col > kPad + 5) return false;
            return !(x.col == i + kPad && (x.row == h || x.row == h - 1));
          });
        });
        if (v && res.pass) {
          res.pass = false;
          res.counterexample = show(sc.b, *v,
                                    std::string(piece_name(t)) + " got below the balcony in row " + std::to_string(h));
        }
      }
    }
  }
  return res;
}

ConditionResult i_floored(RotationModel m) {
  ConditionResult res{"I stays out of floored notches", true, 0, {}};
  for (int h : {5, 11})
    for (bool full : {false, true}) {
      Scenario sc;
      sc.fill(h - 1, 2);
      sc.fill(h - 1, 3);
      if (full) sc.fill(h - 1, 1);
      res.scenarios += 1;
      auto v = search(sc.b, initial_state(PieceType::I, sc.b), m, [&](const PieceState& p) {
        return covers(p, [&](Cell x) { return x.row == h && (Scenario::bucket_cell(x, 4) || Scenario::bucket_cell(x, 5)); });
      });
      if (v && res.pass) {
        res.pass = false;
        res.counterexample = show(sc.b, *v, "I reached the floored notch in row " + std::to_string(h));
      }
    }
  return res;
}

}  // namespace

ReasonabilityReport check_reasonable(RotationModel m) {
  ReasonabilityReport r;
  r.model = m;
  r.conditions.push_back(no_jumps(m));
  r.conditions.push_back(lg_spurned(m));
  r.conditions.push_back(balcony(m, {PieceType::Sq, PieceType::LG, PieceType::LS}, "only I passes a balcony"));
  r.conditions.push_back(i_floored(m));
  // Pieces that never fill buckets.
  ConditionResult extra = balcony(m, {PieceType::RG, PieceType::RS, PieceType::T}, "balcony, pieces outside the bucket set");
  extra.informative = true;
  r.conditions.push_back(extra);
  return r;
}

std::string render_report(const ReasonabilityReport& r) {
  std::ostringstream out;
  out << "model " << model_name(r.model) << "\n";
  for (const auto& c : r.conditions) {
    out << (c.pass ? "PASS " : c.informative ? "NOTE " : "FAIL ") << c.name << " (" << c.scenarios << " scenarios)\n";
    if (!c.pass) out << c.counterexample;
  }
  out << (r.pass() ? "reasonable\n" : "not reasonable\n");
  return out.str();
}

}  // namespace tetris
