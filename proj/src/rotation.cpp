#include "tetris/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

namespace tetris {

std::string_view model_name(RotationModel m) {
  switch (m) {
    case RotationModel::Instantaneous: return "inst";
    case RotationModel::Continuous: return "cont";
    case RotationModel::TetrisObserved: return "tetris";
  }
  return "?";
}

std::optional<RotationModel> parse_model(std::string_view s) {
  if (s == "inst" || s == "instantaneous") return RotationModel::Instantaneous;
  if (s == "cont" || s == "continuous") return RotationModel::Continuous;
  if (s == "tetris") return RotationModel::TetrisObserved;
  return std::nullopt;
}

int box_size(PieceType t) {
  if (t == PieceType::Sq) return 2;
  if (t == PieceType::I) return 4;
  return 3;
}

namespace {

struct Extent {
  int minx, maxx, miny, maxy;
};

Extent extent(const Shape& s) {
  Extent e{s[0].dx, s[0].dx, s[0].dy, s[0].dy};
  for (const Offset& o : s) {
    e.minx = std::min(e.minx, o.dx);
    e.maxx = std::max(e.maxx, o.dx);
    e.miny = std::min(e.miny, o.dy);
    e.maxy = std::max(e.maxy, o.dy);
  }
  return e;
}

// Lower-left corner of the tight bounding box inside the k-by-k box. Odd
// slack is resolved toward the left and toward the top.
void box_slot(PieceType t, int orient, int& x0, int& y0) {
  const int k = box_size(t);
  const Extent e = extent(shape(t, orient));
  const int w = e.maxx - e.minx + 1;
  const int h = e.maxy - e.miny + 1;
  x0 = (k - w) / 2;
  const int top = (k - h) / 2;
  y0 = k - h - top;
}

PieceState observed_target(const PieceState& s, int dir) {
  int x0, y0;
  box_slot(s.type, s.orient, x0, y0);
  const Extent e = extent(shape(s.type, s.orient));
  const int box_left = s.col + e.minx - x0;
  const int box_bottom = s.row + e.miny - y0;
  PieceState out = s;
  out.orient = (s.orient + dir + 4) & 3;
  int nx0, ny0;
  box_slot(s.type, out.orient, nx0, ny0);
  const Extent ne = extent(shape(s.type, out.orient));
  out.col = box_left + nx0 - ne.minx;
  out.row = box_bottom + ny0 - ne.miny;
  return out;
}

struct Pt {
  double x, y;
};

double poly_area(const std::vector<Pt>& p) {
  double a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Pt& u = p[i];
    const Pt& v = p[(i + 1) % p.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return std::abs(a) / 2;
}

template <class Inside, class Cross>
std::vector<Pt> clip_edge(const std::vector<Pt>& in, Inside inside, Cross cross) {
  std::vector<Pt> out;
  if (in.empty()) return out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Pt& cur = in[i];
    const Pt& prev = in[(i + in.size() - 1) % in.size()];
    const bool ci = inside(cur), pi = inside(prev);
    if (ci) {
      if (!pi) out.push_back(cross(prev, cur));
      out.push_back(cur);
    } else if (pi) {
      out.push_back(cross(prev, cur));
    }
  }
  return out;
}

double overlap(const std::vector<Pt>& poly, double x0, double y0) {
  const double x1 = x0 + 1, y1 = y0 + 1;
  auto at_x = [](double X) {
    return [X](const Pt& a, const Pt& b) {
      const double t = (X - a.x) / (b.x - a.x);
      return Pt{X, a.y + t * (b.y - a.y)};
    };
  };
  auto at_y = [](double Y) {
    return [Y](const Pt& a, const Pt& b) {
      const double t = (Y - a.y) / (b.y - a.y);
      return Pt{a.x + t * (b.x - a.x), Y};
    };
  };
  std::vector<Pt> p = poly;
  p = clip_edge(p, [&](const Pt& q) { return q.x >= x0; }, at_x(x0));
  p = clip_edge(p, [&](const Pt& q) { return q.x <= x1; }, at_x(x1));
  p = clip_edge(p, [&](const Pt& q) { return q.y >= y0; }, at_y(y0));
  p = clip_edge(p, [&](const Pt& q) { return q.y <= y1; }, at_y(y1));
  if (p.size() < 3) return 0;
  return poly_area(p);
}

// Swept offsets relative to the anchor, for one shape and direction.
std::vector<Offset> sweep_offsets(PieceType t, int orient, int dir, double step) {
  const Shape& sh = shape(t, orient);
  std::set<std::pair<int, int>> hit;
  for (const Offset& o : sh) hit.insert({o.dx, o.dy});
  const Shape& end = shape(t, (orient + dir + 4) & 3);
  for (const Offset& o : end) hit.insert({o.dx, o.dy});
  if (t == PieceType::Sq) {
    std::vector<Offset> out;
    for (auto [x, y] : hit) out.push_back({x, y});
    return out;
  }
  // the square at offset (dx,dy) covers [dx,dx+1]x[dy,dy+1]; pivot is the
  // middle of the anchor square
  const double px = 0.5, py = 0.5;
  const int steps = static_cast<int>(std::lround(90.0 / step));
  for (int k = 0; k <= steps; ++k) {
    const double th = -dir * (90.0 * k / steps) * std::numbers::pi / 180.0;
    const double cs = std::cos(th), sn = std::sin(th);
    for (const Offset& o : sh) {
      std::vector<Pt> poly;
      const double xs[4] = {0, 1, 1, 0}, ys[4] = {0, 0, 1, 1};
      double lo_x = 1e9, hi_x = -1e9, lo_y = 1e9, hi_y = -1e9;
      for (int v = 0; v < 4; ++v) {
        const double x = o.dx + xs[v] - px, y = o.dy + ys[v] - py;
        Pt q{px + x * cs - y * sn, py + x * sn + y * cs};
        poly.push_back(q);
        lo_x = std::min(lo_x, q.x);
        hi_x = std::max(hi_x, q.x);
        lo_y = std::min(lo_y, q.y);
        hi_y = std::max(hi_y, q.y);
      }
      for (int cx = static_cast<int>(std::floor(lo_x)) - 1; cx <= static_cast<int>(std::ceil(hi_x)); ++cx)
        for (int cy = static_cast<int>(std::floor(lo_y)) - 1; cy <= static_cast<int>(std::ceil(hi_y)); ++cy)
          if (!hit.count({cx, cy}) && overlap(poly, cx, cy) > 1e-9) hit.insert({cx, cy});
    }
  }
  std::vector<Offset> out;
  for (auto [x, y] : hit) out.push_back({x, y});
  return out;
}

const std::vector<Offset>& cached_sweep(PieceType t, int orient, int dir) {
  static std::once_flag once;
  static std::vector<Offset> table[7][4][2];
  std::call_once(once, [] {
    for (int ti = 0; ti < 7; ++ti)
      for (int o = 0; o < 4; ++o)
        for (int d = 0; d < 2; ++d)
          table[ti][o][d] = sweep_offsets(static_cast<PieceType>(ti), o, d == 0 ? 1 : -1, 1.0);
  });
  return table[static_cast<int>(t)][orient & 3][dir > 0 ? 0 : 1];
}

}  // namespace

PieceState rotation_target(RotationModel m, const PieceState& s, int dir) {
  if (m == RotationModel::TetrisObserved) return observed_target(s, dir);
  PieceState out = s;
  out.orient = (s.orient + dir + 4) & 3;
  return out;
}

std::vector<Cell> rotation_requirement(RotationModel m, const PieceState& s, int dir) {
  std::vector<Cell> out;
  if (m == RotationModel::Continuous) {
    for (const Offset& o : cached_sweep(s.type, s.orient, dir))
      out.push_back({s.row + o.dy, s.col + o.dx});
    return out;
  }
  const Cells c = piece_cells(rotation_target(m, s, dir));
  out.assign(c.begin(), c.end());
  return out;
}

bool rotation_legal(RotationModel m, const PieceState& s, int dir, const Board& b) {
  if (s.fixed) return false;
  if (m == RotationModel::Continuous) {
    for (const Offset& o : cached_sweep(s.type, s.orient, dir))
      if (b.filled(s.row + o.dy, s.col + o.dx)) return false;
    return true;
  }
  return b.fits(piece_cells(rotation_target(m, s, dir)));
}

PieceState rotate(RotationModel m, const PieceState& s, int dir, const Board& b) {
  if (!rotation_legal(m, s, dir, b)) return s;
  return rotation_target(m, s, dir);
}

std::vector<Cell> swept_cells(const PieceState& s, int dir, double step_deg) {
  std::vector<Cell> out;
  const auto offs = step_deg == 1.0 ? cached_sweep(s.type, s.orient, dir)
                                    : sweep_offsets(s.type, s.orient, dir, step_deg);
  for (const Offset& o : offs) out.push_back({s.row + o.dy, s.col + o.dx});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tetris
