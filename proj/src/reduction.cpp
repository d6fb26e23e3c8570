#include "tetris/reduction.hpp"

#include <algorithm>
#include <limits>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <sstream>

namespace tetris {

using boost::multiprecision::cpp_int;

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  Instance inst;
  if (!(in >> inst.s >> inst.T)) throw InvalidInstance("instance header must be 's T'");
  if (inst.s < 1 || inst.T < 1) throw InvalidInstance("s and T must be positive");
  long long v;
  while (in >> v) inst.a.push_back(v);
  if (!in.eof()) throw InvalidInstance("instance numbers must be integers");
  if (static_cast<int>(inst.a.size()) != 3 * inst.s)
    throw InvalidInstance("instance needs exactly 3s numbers");
  return inst;
}

std::string render_instance(const Instance& inst) {
  std::string out = std::to_string(inst.s) + " " + std::to_string(inst.T) + "\n";
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(inst.a[i]);
  }
  return out + "\n";
}

namespace {

long long total(const Instance& inst) {
  return std::accumulate(inst.a.begin(), inst.a.end(), 0LL);
}

void check_basic(const Instance& inst) {
  if (inst.s < 1 || static_cast<int>(inst.a.size()) != 3 * inst.s)
    throw InvalidInstance("instance needs s >= 1 and exactly 3s numbers");
  if (total(inst) != inst.s * inst.T) throw InvalidInstance("numbers must sum to sT");
  for (long long x : inst.a)
    if (!(4 * x > inst.T && 2 * x < inst.T))
      throw InvalidInstance("every number must lie strictly between T/4 and T/2");
}

}  // namespace

Instance normalize(const Instance& inst) {
  check_basic(inst);
  Instance out = inst;
  const long long k = 4LL * inst.s;
  out.T *= k;
  for (auto& x : out.a) x *= k;
  return out;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport r;
  const int n = static_cast<int>(inst.a.size());
  if (inst.s < 1 || n != 3 * inst.s) {
    r.problems.push_back("instance needs s >= 1 and exactly 3s numbers");
    return r;
  }
  r.sum_ok = total(inst) == inst.s * inst.T;
  if (!r.sum_ok) r.problems.push_back("numbers do not sum to sT");
  r.bounds_ok = std::all_of(inst.a.begin(), inst.a.end(),
                            [&](long long x) { return 4 * x > inst.T && 2 * x < inst.T; });
  if (!r.bounds_ok) r.problems.push_back("some number is not strictly between T/4 and T/2");
  r.t_even = inst.T % 2 == 0;
  if (!r.t_even) r.problems.push_back("T is odd");
  if (n > kMaxValidateNumbers) {
    r.problems.push_back("too many numbers for exhaustive subset checks");
    return r;
  }
  r.triples_only = true;
  r.gap_ok = true;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    long long sum = 0;
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1UL) {
        sum += inst.a[i];
        ++size;
      }
    if (sum == inst.T && size != 3) r.triples_only = false;
    if (sum != inst.T && std::llabs(inst.T - sum) < 3LL * inst.s) r.gap_ok = false;
  }
  if (!r.triples_only) r.problems.push_back("a subset summing to T does not have three members");
  if (!r.gap_ok) r.problems.push_back("a subset sum misses T by less than 3s");
  return r;
}

std::vector<PieceType> reduction_pieces(const Instance& inst) {
  using P = PieceType;
  std::vector<PieceType> out;
  for (long long x : inst.a) {
    out.insert(out.end(), {P::I, P::LG, P::Sq});
    for (long long k = 0; k < x; ++k) out.insert(out.end(), {P::LG, P::LS, P::LG, P::LG, P::Sq});
    out.insert(out.end(), {P::Sq, P::Sq});
  }
  for (int k = 0; k < inst.s; ++k) out.push_back(P::I);
  out.push_back(P::RG);
  for (long long k = 0; k < 3 * inst.T / 2 + 5; ++k) out.push_back(P::I);
  return out;
}

long long expected_piece_count(int s, long long T) { return 16LL * s + 5LL * s * T + 3 * T / 2 + 6; }

int bucket_first_col(const GameMeta&, int j) { return 6 * (j - 1) + 1; }

namespace {

// Writes the bucket and lock layout with payload row 1 at board row `bottom`.
void draw_top(Board& b, int s, long long T, int bottom) {
  const int P = static_cast<int>(6 * T + 22);
  for (int r = 1; r <= P; ++r) {
    const int br = bottom + r - 1;
    for (int j = 0; j < s; ++j) {
      const int c = 6 * j;
      if (r <= 4) {
        b.set(br, c + 1);
        b.set(br, c + 2);
      }
      if (r % 6 != 5) {
        b.set(br, c + 4);
        b.set(br, c + 5);
      }
      b.set(br, c + 6);
    }
    const int L = 6 * s;
    if (r < P - 1) b.set(br, L + 1);
    if (r < P) b.set(br, L + 2);
    if (r == P - 1) b.set(br, L + 3);
  }
}

void check_buildable(const Instance& inst) {
  check_basic(inst);
  if (inst.T % 2 != 0) throw InvalidInstance("T must be even; normalize the instance first");
}

GameMeta base_meta(const Instance& inst, int staging) {
  GameMeta m;
  m.s = inst.s;
  m.T = inst.T;
  m.staging_rows = staging;
  m.bucket_count = inst.s;
  m.lock_first_col = 6 * inst.s + 1;
  m.payload_rows = static_cast<int>(6 * inst.T + 22);
  m.payload_bottom = 1;
  return m;
}

}  // namespace

GeneratedGame build_game(const Instance& inst, int staging_rows) {
  check_buildable(inst);
  const int staging = staging_rows < 0 ? default_staging(inst.s) : staging_rows;
  if (staging < 4) throw std::invalid_argument("staging rows must leave room for a piece");
  GeneratedGame g;
  g.meta = base_meta(inst, staging);
  g.board = Board(g.meta.payload_rows + staging, 6 * inst.s + 3);
  draw_top(g.board, inst.s, inst.T, 1);
  g.pieces = reduction_pieces(inst);
  return g;
}

namespace {

AuditLine line(const std::string& name, const std::string& expected, const std::string& actual) {
  return AuditLine{name, expected, actual, expected == actual};
}

AuditLine line(const std::string& name, long long expected, long long actual) {
  return line(name, std::to_string(expected), std::to_string(actual));
}

long long open_cells(const Board& b, int r0, int r1, int c0, int c1) {
  long long n = 0;
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) n += b.open(r, c) ? 1 : 0;
  return n;
}

}  // namespace

AuditReport counting_audit(const GeneratedGame& g) {
  AuditReport rep;
  const GameMeta& m = g.meta;
  if (!m.materialized) {
    rep.lines.push_back(AuditLine{"board built", "yes", "no: " + m.note, false});
    return rep;
  }
  const long long s = m.s, T = m.T;
  const int r0 = m.payload_bottom, r1 = m.payload_bottom + m.payload_rows - 1;
  const int width = 6 * m.s + 3;
  const int left = 1;
  Board top = g.board;
  if (m.mirrored) top = mirror_board(g.board);
  long long payload = open_cells(top, r0, r1, left, width);
  rep.lines.push_back(line("unfilled payload cells", 64 * s + 20 * s * T + 6 * T + 24, payload));
  for (int j = 1; j <= m.s; ++j) {
    const int c = 6 * (j - 1) + 1;
    rep.lines.push_back(line("bucket " + std::to_string(j) + " unfilled cells", 20 * T + 64,
                             open_cells(top, r0, r1, c, c + 5)));
  }
  rep.lines.push_back(line("lock unfilled cells", 6 * T + 24, open_cells(top, r0, r1, 6 * m.s + 1, 6 * m.s + 3)));
  const long long base_count = expected_piece_count(m.s, m.T);
  long long extra = 0;
  if (m.variant == "tetrises") extra = 1;
  else if (m.variant != "base") extra = 1 + static_cast<long long>(cpp_int(m.reservoir_area) / 4);
  rep.lines.push_back(line("piece count", base_count + extra, static_cast<long long>(g.pieces.size())));
  // numbers are recovered from the sequence: each run of fillers between an
  // initiator and a terminator
  std::vector<long long> fillers;
  {
    std::size_t i = 0;
    const auto& p = g.pieces;
    auto want = [&](PieceType a, PieceType b) { return m.mirrored ? mirror_piece(a) == b : a == b; };
    while (i + 2 < p.size() && want(PieceType::I, p[i]) && want(PieceType::LG, p[i + 1]) &&
           want(PieceType::Sq, p[i + 2]) && fillers.size() < static_cast<std::size_t>(3 * m.s)) {
      i += 3;
      long long k = 0;
      while (i + 4 < p.size() && want(PieceType::LG, p[i]) && want(PieceType::LS, p[i + 1])) {
        i += 5;
        ++k;
      }
      fillers.push_back(k);
      i += 2;
    }
  }
  long long per_number_total = 0;
  for (std::size_t k = 0; k < fillers.size(); ++k) {
    per_number_total += 4 * (5 * fillers[k] + 5);
    rep.lines.push_back(line("cells for number " + std::to_string(k + 1), 20 * fillers[k] + 20,
                             4 * (5 * fillers[k] + 5)));
  }
  rep.lines.push_back(line("numbers found in sequence", 3 * s, static_cast<long long>(fillers.size())));
  rep.lines.push_back(line("cells in the number pieces", 20 * s * T + 60 * s, per_number_total));
  rep.lines.push_back(line("base piece cells equal unfilled payload", payload, 4 * base_count));
  // whole-board balance covers variants with extra rows or a reservoir
  long long all_open = 0;
  for (int r = 1; r <= g.board.rows(); ++r) {
    if (r >= r0 + m.payload_rows) break;
    for (int c = 1; c <= g.board.cols(); ++c) all_open += g.board.open(r, c) ? 1 : 0;
  }
  rep.lines.push_back(line("all piece cells equal all unfilled cells below staging",
                           4 * static_cast<long long>(g.pieces.size()), all_open));
  return rep;
}

std::optional<Rational> parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    Rational q;
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      q.num = std::stoll(s.substr(0, slash), &p1);
      q.den = std::stoll(s.substr(slash + 1), &p2);
      if (p1 != slash || p2 != s.size() - slash - 1) return std::nullopt;
    } else {
      const auto dot = s.find('.');
      if (dot == std::string::npos) {
        std::size_t p = 0;
        q.num = std::stoll(s, &p);
        q.den = 1;
        if (p != s.size()) return std::nullopt;
      } else {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t p = 0;
        q.num = std::stoll(digits, &p);
        if (p != digits.size()) return std::nullopt;
        q.den = 1;
        for (std::size_t k = dot + 1; k < s.size(); ++k) q.den *= 10;
      }
    }
    if (q.den <= 0 || q.num <= 0 || q.num >= q.den) return std::nullopt;
    const long long g = std::gcd(q.num, q.den);
    q.num /= g;
    q.den /= g;
    return q;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<VariantKind> parse_variant(const std::string& s) {
  if (s == "tetrises") return VariantKind::Tetrises;
  if (s == "survival") return VariantKind::Survival;
  if (s == "inapprox-pieces") return VariantKind::InapproxPieces;
  if (s == "inapprox-rows") return VariantKind::InapproxRows;
  if (s == "inapprox-height") return VariantKind::InapproxHeight;
  return std::nullopt;
}

std::string variant_name(VariantKind k) {
  switch (k) {
    case VariantKind::Tetrises: return "tetrises";
    case VariantKind::Survival: return "survival";
    case VariantKind::InapproxPieces: return "inapprox-pieces";
    case VariantKind::InapproxRows: return "inapprox-rows";
    case VariantKind::InapproxHeight: return "inapprox-height";
  }
  return "?";
}

namespace {

cpp_int ipow(cpp_int b, long long e) {
  cpp_int r = 1;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string str(const cpp_int& v) { return v.str(); }

// Smallest x >= lo with pred(x), for a predicate that is monotone once true.
template <class Pred>
cpp_int least_with(cpp_int lo, Pred pred) {
  if (pred(lo)) return lo;
  cpp_int step = 1;
  cpp_int hi = lo + step;
  while (!pred(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  // pred(lo) false, pred(hi) true
  while (hi - lo > 1) {
    cpp_int mid = (lo + hi) / 2;
    if (pred(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

struct Reservoir {
  cpp_int r;
  cpp_int R;
  cpp_int A;
  long long a_rows = 0;
  long long F = 0;
  long long P = 0;
};

}  // namespace

GeneratedGame build_variant(const Instance& inst, const VariantSpec& spec, int staging_rows,
                            long long cell_cap) {
  check_buildable(inst);
  const bool needs_eps = spec.kind == VariantKind::InapproxPieces || spec.kind == VariantKind::InapproxRows ||
                         spec.kind == VariantKind::InapproxHeight;
  if (needs_eps != spec.epsilon.has_value())
    throw std::invalid_argument("epsilon is required exactly for the inapproximability variants");
  if (spec.epsilon && (spec.epsilon->num <= 0 || spec.epsilon->den <= spec.epsilon->num))
    throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  const int staging = staging_rows < 0 ? default_staging(inst.s) : staging_rows;
  GeneratedGame g;
  g.meta = base_meta(inst, staging);
  g.meta.variant = variant_name(spec.kind);
  const std::vector<PieceType> base = reduction_pieces(inst);
  const int P = g.meta.payload_rows;

  if (spec.kind == VariantKind::Tetrises) {
    g.meta.payload_bottom = 5;
    g.board = Board(P + staging + 4, 6 * inst.s + 3);
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= g.board.cols(); ++c)
        if (c != 6) g.board.set(r, c);
    draw_top(g.board, inst.s, inst.T, 5);
    g.pieces = base;
    g.pieces.push_back(PieceType::I);
    return g;
  }

  const int cols = 6 * inst.s + 7;
  const long long cell_row = cols;
  const long long open_per_row = cols - 1;
  // rows at or above the lower lock row
  const long long a_rows = 2 + P + staging;
  Reservoir res;
  res.a_rows = a_rows;
  res.A = cpp_int(a_rows) * cell_row;
  // filled cells at or above the lower lock: top part plus the lock rows
  {
    const long long top_open = 64LL * inst.s + 20LL * inst.s * inst.T + 6 * inst.T + 24;
    // four new columns are full in the payload rows
    res.F = static_cast<long long>(P) * cols - top_open + 2LL * cols - 4;
  }
  res.P = 4 * (static_cast<long long>(base.size()) + 1);

  auto even_up = [](cpp_int v) { return v % 2 == 0 ? v : v + 1; };
  const long long num = spec.epsilon ? spec.epsilon->num : 1;
  const long long den = spec.epsilon ? spec.epsilon->den : 1;
  switch (spec.kind) {
    case VariantKind::Survival: {
      // r * open_per_row >= 2A + 1
      cpp_int need = 2 * res.A + 1;
      res.r = even_up((need + open_per_row - 1) / open_per_row);
      break;
    }
    case VariantKind::InapproxPieces: {
      // R > (2A)^(den/num)  <=>  R^num > (2A)^den
      const cpp_int rhs = ipow(2 * res.A, den);
      auto ok = [&](const cpp_int& r) { return ipow(r * open_per_row, num) > rhs; };
      res.r = even_up(least_with(cpp_int(1), ok));
      break;
    }
    case VariantKind::InapproxRows: {
      // r > a^(2 den/num)  <=>  r^num > a^(2 den)
      const cpp_int rhs = ipow(cpp_int(a_rows), 2 * den);
      auto big = [&](const cpp_int& r) { return ipow(r, num) > rhs; };
      // (r + a) c < r^(2/(2-eps))  <=>  ((r + a) c)^(2 den - num) < r^(2 den)
      auto wide = [&](const cpp_int& r) {
        return ipow((r + a_rows) * cell_row, 2 * den - num) < ipow(r, 2 * den);
      };
      cpp_int r = least_with(cpp_int(1), big);
      r = least_with(r, wide);
      res.r = even_up(r);
      break;
    }
    case VariantKind::InapproxHeight: {
      // r = ceil((F + P) / delta), delta = eps / (3 - eps) = num / (3 den - num)
      const cpp_int fp = cpp_int(res.F) + res.P;
      const cpp_int dd = 3 * den - num;
      res.r = (fp * dd + num - 1) / num;
      break;
    }
    default: break;
  }
  res.R = res.r * open_per_row;

  g.meta.reservoir_rows = res.r > cpp_int(std::numeric_limits<long long>::max())
                              ? -1
                              : static_cast<long long>(res.r);
  g.meta.area_above = str(res.A);
  g.meta.reservoir_area = str(res.R);
  g.meta.filled_above = res.F;
  g.meta.piece_area = res.P;
  g.meta.rows_above = a_rows;

  const cpp_int total_rows = res.r + a_rows;
  const cpp_int cells = total_rows * cell_row;
  if (cells > cell_cap) {
    g.meta.materialized = false;
    g.meta.note = "board of " + str(cells) + " cells exceeds cap " + std::to_string(cell_cap) +
                  "; parameters computed, board not built";
    return g;
  }
  const int r = static_cast<int>(res.r);
  g.board = Board(static_cast<int>(total_rows), cols);
  for (int y = 1; y <= r; ++y) g.board.set(y, 1);
  const int lower = r + 1, upper = r + 2;
  for (int c = 1; c <= cols; ++c) {
    if (c != 6 * inst.s + 5) g.board.set(lower, c);
    if (c < 6 * inst.s + 5) g.board.set(upper, c);
  }
  g.meta.payload_bottom = r + 3;
  draw_top(g.board, inst.s, inst.T, r + 3);
  for (int y = r + 3; y < r + 3 + P; ++y)
    for (int c = 6 * inst.s + 4; c <= cols; ++c) g.board.set(y, c);
  g.pieces = base;
  g.pieces.push_back(PieceType::RG);
  const cpp_int squares = res.R / 4;
  g.pieces.insert(g.pieces.end(), squares.convert_to<std::size_t>(), PieceType::Sq);
  if (res.R % 4 != 0) g.meta.note = "reservoir area is not a multiple of 4; Sq count rounded down";
  return g;
}

AuditReport variant_audit(const GeneratedGame& g, const VariantSpec& spec) {
  AuditReport rep;
  const GameMeta& m = g.meta;
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.lines.push_back(AuditLine{name, "holds", ok ? "holds" : "fails: " + detail, ok});
  };
  if (spec.kind == VariantKind::Tetrises) {
    const long long expect = expected_piece_count(m.s, m.T) + 1;
    add("piece count", static_cast<long long>(g.pieces.size()) == expect,
        std::to_string(g.pieces.size()) + " vs " + std::to_string(expect));
    return rep;
  }
  const cpp_int A(m.area_above), R(m.reservoir_area);
  const cpp_int r = cpp_int(m.reservoir_area) / (6 * m.s + 6);
  const long long num = spec.epsilon ? spec.epsilon->num : 1;
  const long long den = spec.epsilon ? spec.epsilon->den : 1;
  rep.lines.push_back(AuditLine{"reservoir rows", "r", r.str(), true});
  switch (spec.kind) {
    case VariantKind::Survival:
      add("R >= 2A + 1", R >= 2 * A + 1, R.str() + " vs " + cpp_int(2 * A + 1).str());
      break;
    case VariantKind::InapproxPieces:
      add("R > (2A)^(1/eps)", ipow(R, num) > ipow(2 * A, den), "R=" + R.str());
      break;
    case VariantKind::InapproxRows: {
      const cpp_int a(m.rows_above);
      const cpp_int c(6 * m.s + 7);
      add("r > a^(2/eps)", ipow(r, num) > ipow(a, 2 * den), "r=" + r.str());
      const cpp_int p = cpp_int(static_cast<long long>(expected_piece_count(m.s, m.T) + 1)) + R / 4;
      add("r < p", r < p, "p=" + p.str());
      add("p < (r+a)c", p < (r + a) * c, "p=" + p.str());
      add("(r+a)c < r^(2/(2-eps))", ipow((r + a) * c, 2 * den - num) < ipow(r, 2 * den), "r=" + r.str());
      break;
    }
    case VariantKind::InapproxHeight: {
      const cpp_int fp = cpp_int(m.filled_above) + m.piece_area;
      const cpp_int dd = 3 * den - num;
      const cpp_int want = (fp * dd + num - 1) / num;
      add("r = ceil((F+P)/delta)", r == want, r.str() + " vs " + want.str());
      add("r * delta >= F + P", r * num >= fp * dd, "r=" + r.str());
      break;
    }
    default: break;
  }
  if (m.materialized) {
    add("board built", g.board.rows() > 0, "missing board");
  } else {
    rep.lines.push_back(AuditLine{"size cap", "reported", m.note, true});
  }
  return rep;
}

GeneratedGame mirror_game(const GeneratedGame& g) {
  GeneratedGame out;
  out.meta = g.meta;
  out.meta.mirrored = !g.meta.mirrored;
  out.board = g.meta.materialized ? mirror_board(g.board) : g.board;
  out.pieces.reserve(g.pieces.size());
  for (PieceType p : g.pieces) out.pieces.push_back(mirror_piece(p));
  return out;
}

}  // namespace tetris
