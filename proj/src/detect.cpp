#include <algorithm>
#include <deque>

#include "tetris/analysis.hpp"

namespace tetris {

std::string unfillable_name(UnfillableKind k) {
  switch (k) {
    case UnfillableKind::Hole: return "hole";
    case UnfillableKind::SpurnedNotch: return "spurned-notch";
    case UnfillableKind::BalconiedOXX: return "balconied-OXX";
    case UnfillableKind::BalconiedXXO: return "balconied-XXO";
    case UnfillableKind::BalconiedXXX: return "balconied-XXX";
    case UnfillableKind::BColumn: return "b-column";
    case UnfillableKind::BalconiedB2: return "balconied-b2";
    case UnfillableKind::SubNotchRectangle: return "sub-notch-rectangle";
    case UnfillableKind::CeilingDiscrepancy: return "ceiling-discrepancy";
    case UnfillableKind::BalconiedGap: return "balconied-gap";
    case UnfillableKind::Unapproachable: return "unapproachable";
  }
  return "?";
}

std::string Unfillable::str() const {
  std::string s = unfillable_name(kind) + " row " + std::to_string(row) + " col " + std::to_string(col);
  if (alpha) s += " len " + std::to_string(alpha);
  if (balcony) s += " balcony " + std::to_string(balcony);
  if (review) s += " review";
  return s;
}

namespace {

struct Scan {
  const BucketRegion& r;
  const Board& b;
  int H;
  std::vector<int> balconies;  // ascending
  std::vector<Unfillable> out;

  explicit Scan(const BucketRegion& reg) : r(reg), b(reg.cells), H(reg.rows()) {
    for (int row = 1; row <= H; ++row) {
      const int n = b.filled(row, 1) + b.filled(row, 2) + b.filled(row, 3);
      if (n == 2) balconies.push_back(row);
    }
  }

  // Lowest balcony strictly above row h, 0 if none.
  int balcony_above(int h) const {
    auto it = std::upper_bound(balconies.begin(), balconies.end(), h);
    return it == balconies.end() ? 0 : *it;
  }
  int balcony_at_or_above(int h) const { return balcony_above(h - 1); }

  void add(UnfillableKind k, int row, int col, int alpha = 0, int balcony = 0) {
    out.push_back(Unfillable{k, row, col, alpha, balcony});
  }

  void holes() {
    Board seen(H, 6);
    std::deque<Cell> q;
    for (int c = 1; c <= 6; ++c)
      if (b.open(H, c)) {
        seen.set(H, c);
        q.push_back({H, c});
      }
    while (!q.empty()) {
      Cell c = q.front();
      q.pop_front();
      const Cell nb[4] = {{c.row + 1, c.col}, {c.row - 1, c.col}, {c.row, c.col + 1}, {c.row, c.col - 1}};
      for (Cell n : nb) {
        if (!b.inside(n.row, n.col) || b.filled(n) || seen.filled(n)) continue;
        seen.set(n);
        q.push_back(n);
      }
    }
    // One witness per sealed component, at its lowest-leftmost cell.
    for (int row = 1; row <= H; ++row)
      for (int c = 1; c <= 6; ++c) {
        if (b.filled(row, c) || seen.filled(row, c)) continue;
        add(UnfillableKind::Hole, row, c);
        std::deque<Cell> comp{{row, c}};
        seen.set(row, c);
        while (!comp.empty()) {
          Cell x = comp.front();
          comp.pop_front();
          const Cell nb[4] = {{x.row + 1, x.col}, {x.row - 1, x.col}, {x.row, x.col + 1}, {x.row, x.col - 1}};
          for (Cell n : nb) {
            if (!b.inside(n.row, n.col) || b.filled(n) || seen.filled(n)) continue;
            seen.set(n);
            comp.push_back(n);
          }
        }
      }
  }

  void notches() {
    for (int n = 1; n <= H; ++n) {
      if (!r.notch_open(n)) continue;
      if (b.filled(n, 2)) add(UnfillableKind::SpurnedNotch, n, 4);
      const int bal = balcony_above(n);
      if (!bal || n < 2) continue;
      const bool f1 = b.filled(n - 1, 1), f2 = b.filled(n - 1, 2), f3 = b.filled(n - 1, 3);
      if (f1 && f2 && f3) add(UnfillableKind::BalconiedXXX, n, 4, 0, bal);
      else if (!f1 && f2 && f3) add(UnfillableKind::BalconiedOXX, n, 4, 0, bal);
      else if (f1 && f2 && !f3) add(UnfillableKind::BalconiedXXO, n, 4, 0, bal);
      // Open cells straight below the notch in column 2 or 3.
      for (int c = 2; c <= 3; ++c) {
        if (b.filled(n, c)) continue;
        int d = 0;
        while (n - d - 1 >= 1 && b.open(n - d - 1, c)) ++d;
        if (n - d - 1 < 1) continue;
        if (d >= 1 && d <= 3) add(UnfillableKind::SubNotchRectangle, n, c, d, bal);
      }
    }
  }

  void columns() {
    for (int c = 1; c <= 3; ++c) {
      int row = 1;
      while (row <= H) {
        if (b.filled(row, c)) {
          ++row;
          continue;
        }
        const int lo = row;
        while (row <= H && b.open(row, c)) ++row;
        const int hi = row - 1;
        if (hi == H) continue;
        const int bal = balcony_above(hi);
        if (!bal) continue;
        const int alpha = hi - lo + 1;
        int spanned = 0;
        for (int k = lo; k <= hi; ++k)
          if (r.notch_open(k)) ++spanned;
        const int m = alpha % 4;
        if ((spanned == 0 && m != 0) || (spanned == 1 && m != 0 && m != 1))
          add(UnfillableKind::BColumn, lo, c, alpha, bal);
        if (alpha == 2) add(UnfillableKind::BalconiedB2, lo, c, alpha, bal);
      }
    }
  }

  // Columns 2 and 3 open together over a shared stretch; one ceiling sits
  // 1..3 rows above the other.
  void ceilings() {
    int row = 1;
    while (row <= H) {
      if (b.filled(row, 2) || b.filled(row, 3)) {
        ++row;
        continue;
      }
      const int lo = row;
      while (row <= H && b.open(row, 2) && b.open(row, 3)) ++row;
      const int hi = row - 1;
      if (hi == H) continue;
      const bool c2 = b.filled(hi + 1, 2), c3 = b.filled(hi + 1, 3);
      if (c2 && c3) continue;
      const int longer = c2 ? 3 : 2;
      int top = hi + 1;
      while (top <= H && b.open(top, longer)) ++top;
      if (top > H) continue;
      const int beta = top - hi - 1;
      if (beta < 1 || beta > 3) continue;
      const int bal = balcony_at_or_above(top);
      if (!bal) continue;
      const bool floor = b.filled(lo - 1, 2) && b.filled(lo - 1, 3);
      int gap = 0;
      for (int k = lo; k <= hi && !gap; ++k)
        if (r.notch_open(k)) gap = k;
      if (floor) add(UnfillableKind::CeilingDiscrepancy, lo, longer, beta, bal);
      if (floor && gap) out.back().review = true;
      if (gap) add(UnfillableKind::BalconiedGap, gap, longer, beta, bal);
      if (floor && gap) out.back().review = true;
    }
  }

  void unapproachable() {
    for (int n = 4; n + 1 <= H; ++n) {
      if (!r.notch_row(n)) continue;
      if (!(b.filled(n - 3, 1) && b.open(n - 2, 1) && b.filled(n - 2, 2) && b.filled(n - 2, 3))) continue;
      if (!(b.open(n - 1, 1) && b.open(n - 1, 2) && b.open(n - 1, 3) && b.open(n, 1))) continue;
      const bool open_notch = r.notch_open(n) && b.open(n, 2) && b.open(n, 3);
      const bool hung_lg = b.open(n, 2) && b.filled(n, 3) && b.filled(n, 4) && b.filled(n, 5) && b.filled(n + 1, 3);
      const bool flat_i = b.filled(n, 2) && b.filled(n, 3) && b.filled(n, 4) && b.filled(n, 5);
      if (open_notch || hung_lg || flat_i) add(UnfillableKind::Unapproachable, n - 2, 1);
    }
  }
};

}  // namespace

std::vector<Unfillable> detect_unfillable(const BucketRegion& r) {
  Scan s(r);
  s.holes();
  s.notches();
  s.columns();
  s.ceilings();
  s.unapproachable();
  return std::move(s.out);
}

}  // namespace tetris
