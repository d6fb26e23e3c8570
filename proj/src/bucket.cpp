#include <array>
#include <stdexcept>

#include "tetris/analysis.hpp"

namespace tetris {

BucketRegion extract_bucket(const Board& board, int j, const GameMeta& meta) {
  if (j < 1 || j > meta.s) throw std::out_of_range("bucket index " + std::to_string(j) + " out of range");
  const int first = bucket_first_col(meta, j);
  BucketRegion r;
  r.bucket = j;
  r.cells = Board(meta.payload_rows, 6);
  for (int row = 1; row <= meta.payload_rows; ++row) {
    const int br = payload_to_board_row(meta, row);
    for (int c = 1; c <= 6; ++c) {
      const int bc = meta.mirrored ? board.cols() + 1 - (first + c - 1) : first + c - 1;
      r.cells.set(row, c, board.filled(br, bc));
    }
  }
  return r;
}

BucketRegion empty_bucket(int rows) {
  if (rows < 1) throw std::length_error("bucket height out of range");
  BucketRegion r;
  r.cells = Board(rows, 6);
  for (int row = 1; row <= rows; ++row) {
    r.cells.set(row, 6);
    if (!r.notch_row(row)) {
      r.cells.set(row, 4);
      r.cells.set(row, 5);
    }
  }
  return r;
}

namespace {

std::string side_name(Side s) { return s == Side::Left ? "left" : s == Side::Right ? "right" : ""; }

struct Builder {
  BucketRegion r;
  int base;
  bool ok = true;

  Builder(int rows, int b) : r(empty_bucket(rows)), base(b) {
    for (int n = 5; n <= b && n <= rows; n += 6) fill(n, 4), fill(n, 5);
  }
  void fill(int row, int col) {
    if (row < 1 || row > r.rows()) {
      ok = false;
      return;
    }
    r.cells.set(row, col);
  }
  // Heights above the base for columns 1..3.
  Builder& heights(int h1, int h2, int h3) {
    const int h[3] = {h1, h2, h3};
    for (int c = 0; c < 3; ++c)
      for (int row = 1; row <= base + h[c]; ++row) fill(row, c + 1);
    return *this;
  }
  Builder& notch_filled(int rel) {
    fill(base + rel, 4);
    fill(base + rel, 5);
    return *this;
  }
  Builder& cell(int rel, int col) {
    fill(base + rel, col);
    return *this;
  }
  // LG in its right-facing orientation hung from the notch at base+rel.
  Builder& hung(int rel) {
    const int n = base + rel;
    if (n + 1 > r.rows() || !r.notch_row(n)) ok = false;
    fill(n, 3);
    fill(n, 4);
    fill(n, 5);
    fill(n + 1, 3);
    return *this;
  }
  std::optional<BucketRegion> done() {
    if (!ok) return std::nullopt;
    return r;
  }
};

bool parametric(LabelKind k) {
  switch (k) {
    case LabelKind::LgPrepped:
    case LabelKind::IPreppedLg:
    case LabelKind::LgTplat:
    case LabelKind::LgUnderflat:
    case LabelKind::LgUnapproachable:
    case LabelKind::LgOfD:
    case LabelKind::LgThappy:
      return true;
    default:
      return false;
  }
}

bool two_parametric(LabelKind k) {
  return k == LabelKind::LgPreppedLg || k == LabelKind::LgLgUnapproachable || k == LabelKind::LgLgThappy;
}

bool sided(LabelKind k) {
  return k == LabelKind::Unprepped || k == LabelKind::LgPrepped || k == LabelKind::LgPreppedLg;
}

void base_shape(Builder& b, LabelKind k, Side side) {
  switch (k) {
    case LabelKind::Unprepped:
    case LabelKind::LgPrepped:
    case LabelKind::LgPreppedLg:
      if (side == Side::Left)
        b.heights(0, 4, 4);
      else
        b.heights(4, 4, 0);
      break;
    case LabelKind::Overflat:
    case LabelKind::LgOf1:
    case LabelKind::LgOf2:
    case LabelKind::LgOf3:
    case LabelKind::LgOfD:
      b.heights(6, 6, 6).notch_filled(5);
      break;
    case LabelKind::TallPlateau:
    case LabelKind::LgTplat:
      b.heights(0, 9, 9).notch_filled(5);
      break;
    case LabelKind::TriggerHappy:
    case LabelKind::LgThappy:
    case LabelKind::LgLgThappy:
      b.heights(9, 9, 8).notch_filled(5);
      break;
    case LabelKind::ShortPlateau:
      b.heights(0, 7, 7).notch_filled(5);
      break;
    case LabelKind::Underflat:
    case LabelKind::LgUnderflat:
      b.heights(4, 4, 4);
      break;
    case LabelKind::IUp:
    case LabelKind::IPreppedLg:
      b.heights(8, 4, 0);
      break;
    case LabelKind::LgUnapproachable:
    case LabelKind::LgLgUnapproachable:
      b.heights(2, 3, 3);
      break;
    case LabelKind::Unknown:
      b.ok = false;
      break;
  }
}

// Row of the first open notch above the base shape, relative to the base.
int first_notch(LabelKind k) {
  switch (k) {
    case LabelKind::LgTplat:
    case LabelKind::LgOfD:
    case LabelKind::LgThappy:
    case LabelKind::LgLgThappy:
      return 11;
    default:
      return 5;
  }
}

}  // namespace

std::string kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::Unprepped: return "unprepped";
    case LabelKind::Overflat: return "overflat";
    case LabelKind::TallPlateau: return "tall-plateau";
    case LabelKind::TriggerHappy: return "trigger-happy";
    case LabelKind::ShortPlateau: return "short-plateau";
    case LabelKind::Underflat: return "underflat";
    case LabelKind::IUp: return "I-up";
    case LabelKind::LgPrepped: return "LG-UP";
    case LabelKind::IPreppedLg: return "LG-IUP";
    case LabelKind::LgPreppedLg: return "LG-LG-UP";
    case LabelKind::LgTplat: return "LG-TP";
    case LabelKind::LgUnderflat: return "LG-UF";
    case LabelKind::LgUnapproachable: return "LG-UA";
    case LabelKind::LgLgUnapproachable: return "LG-LG-UA";
    case LabelKind::LgOf1: return "LG-OF-1";
    case LabelKind::LgOf2: return "LG-OF-2";
    case LabelKind::LgOf3: return "LG-OF-3";
    case LabelKind::LgOfD: return "LG-OF-D";
    case LabelKind::LgThappy: return "LG-TH";
    case LabelKind::LgLgThappy: return "LG-LG-TH";
    case LabelKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string label_name(const BucketLabel& l) {
  std::string s = kind_name(l.kind);
  if (parametric(l.kind)) s += "-" + std::to_string(l.i);
  if (two_parametric(l.kind)) s += "-" + std::to_string(l.i) + "-" + std::to_string(l.j);
  if (sided(l.kind)) s += " (" + side_name(l.side) + ")";
  return s;
}

std::optional<BucketRegion> template_region(const BucketLabel& l, int rows) {
  if (l.base < 0 || l.base % 6 != 0) return std::nullopt;
  if (sided(l.kind) != (l.side != Side::None)) return std::nullopt;
  if (parametric(l.kind) && (l.i < 1 || l.j != 0)) return std::nullopt;
  if (two_parametric(l.kind) && (l.i < 1 || l.j <= l.i)) return std::nullopt;
  if (!parametric(l.kind) && !two_parametric(l.kind) && (l.i != 0 || l.j != 0)) return std::nullopt;
  Builder b(rows, l.base);
  base_shape(b, l.kind, l.side);
  const int f = first_notch(l.kind);
  if (parametric(l.kind)) b.hung(f + 6 * (l.i - 1));
  if (two_parametric(l.kind)) b.hung(f + 6 * (l.i - 1)).hung(f + 6 * (l.j - 1));
  switch (l.kind) {
    case LabelKind::LgOf1: b.cell(7, 1).cell(7, 2).cell(8, 2).cell(9, 2); break;
    case LabelKind::LgOf2: b.cell(7, 2).cell(7, 3).cell(8, 3).cell(9, 3); break;
    case LabelKind::LgOf3: b.cell(7, 1).cell(7, 2).cell(7, 3).cell(8, 1); break;
    default: break;
  }
  return b.done();
}

BucketRegion unapproachable_region(int rows, int base) {
  Builder b(rows, base);
  b.heights(2, 3, 3);
  auto r = b.done();
  if (!r) throw std::length_error("bucket too short for the template");
  return *r;
}

namespace {

// Fill level candidates: one less than the lowest open interior cell rounded
// down to a multiple of 6, and the multiple below that.
std::vector<int> base_candidates(const BucketRegion& r) {
  int low = r.rows() + 1;
  for (int c = 1; c <= 3; ++c)
    for (int row = 1; row <= r.rows(); ++row)
      if (r.cells.open(row, c)) {
        low = std::min(low, row);
        break;
      }
  std::vector<int> out;
  int b = ((low - 1) / 6) * 6;
  for (int k = 0; k < 2 && b >= 0; ++k, b -= 6) out.push_back(b);
  return out;
}

}  // namespace

std::vector<BucketLabel> matching_labels(const BucketRegion& r) {
  std::vector<BucketLabel> out;
  if (r.notch_phase % 6 != 5) return out;
  const int H = r.rows();
  for (int b : base_candidates(r)) {
    for (int ki = 0; ki < static_cast<int>(LabelKind::Unknown); ++ki) {
      const auto k = static_cast<LabelKind>(ki);
      const int hung = parametric(k) ? 1 : two_parametric(k) ? 2 : 0;
      std::vector<Side> sides = sided(k) ? std::vector<Side>{Side::Left, Side::Right} : std::vector<Side>{Side::None};
      for (Side sd : sides) {
        // Template without its hung pieces; the rest of the region must be
        // exactly the hung pieces.
        Builder bare(H, b);
        base_shape(bare, k, sd);
        if (k == LabelKind::LgOf1 || k == LabelKind::LgOf2 || k == LabelKind::LgOf3) {
          auto full = template_region(BucketLabel{k, 0, 0, sd, b}, H);
          if (!full) continue;
          bare.r = *full;
        }
        if (!bare.ok) continue;
        std::vector<int> notches;
        bool ok = true;
        int extra = 0;
        for (int row = 1; row <= H && ok; ++row)
          for (int c = 1; c <= 6; ++c) {
            const bool want = bare.r.cells.filled(row, c), have = r.cells.filled(row, c);
            if (want && !have) ok = false;
            if (!want && have) {
              ++extra;
              if (c == 4) notches.push_back(row);
            }
          }
        if (!ok || extra != 4 * hung || static_cast<int>(notches.size()) != hung) continue;
        const int f = b + first_notch(k);
        std::vector<int> idx;
        for (int n : notches) {
          if (n < f || (n - f) % 6) ok = false;
          idx.push_back((n - f) / 6 + 1);
        }
        if (!ok) continue;
        BucketLabel l{k, hung ? idx[0] : 0, hung == 2 ? idx[1] : 0, sd, b};
        auto t = template_region(l, H);
        if (t && t->cells == r.cells) out.push_back(l);
      }
    }
  }
  return out;
}

BucketLabel classify_bucket(const BucketRegion& r) {
  auto m = matching_labels(r);
  if (m.size() == 1) return m[0];
  return BucketLabel{};
}

}  // namespace tetris
