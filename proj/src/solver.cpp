#include "tetris/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tetris/analysis.hpp"
#include "tetris/player.hpp"

namespace tetris {

std::string decision_name(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

GeneratedGame plain_game(const Board& b, const std::vector<PieceType>& pieces) {
  GeneratedGame g;
  g.board = b;
  g.pieces = pieces;
  g.meta.variant = "plain";
  g.meta.payload_rows = b.rows();
  return g;
}

bool prune_allowed(const GeneratedGame& g, const Objective& obj) {
  return g.meta.s > 0 && g.meta.variant == "base" && g.meta.materialized &&
         obj.kind == ObjectiveKind::RowsCleared && obj.value == 6 * g.meta.T + 22;
}

namespace {

void check_budget(const SearchBudget& b) {
  if (b.max_nodes <= 0 || b.max_seconds <= 0 || b.oracle_cells <= 0 || b.oracle_pieces <= 0)
    throw BadBudget("search budget fields must be positive");
}

// Outcome of fixing one piece.
struct Step {
  PieceState placement;
  Board board;  // after clearing
  int cleared = 0;
  int height = 0;  // before clearing
  bool lost = false;
};

int leftmost(const PieceState& s) {
  int c = std::numeric_limits<int>::max();
  for (const Cell& x : piece_cells(s)) c = std::min(c, x.col);
  return c;
}

Step fix_step(const Board& b, const PieceState& s, const std::vector<PieceType>& pieces, std::size_t idx,
              const RuleFlags& flags) {
  Step st;
  st.placement = s;
  Board placed = with_piece(b, s);
  st.height = placed.height();
  const bool has_next = idx + 1 < pieces.size();
  const bool can_lose = has_next && !flags.no_loss;
  if (can_lose && flags.loss_mode == LossMode::Immediate && entry_blocked(pieces[idx + 1], placed)) st.lost = true;
  st.cleared = placed.clear_full_rows();
  if (can_lose && entry_blocked(pieces[idx + 1], placed)) st.lost = true;
  st.board = flags.no_loss ? keep_margin(placed) : std::move(placed);
  return st;
}

std::vector<Step> expand(const Board& b, const std::vector<PieceType>& pieces, std::size_t idx, RotationModel m,
                         const RuleFlags& flags, const std::vector<PieceState>& guide) {
  std::vector<Step> out;
  if (entry_blocked(pieces[idx], b)) return out;
  for (const PieceState& s : reachable_fixed(b, pieces[idx], m, flags)) out.push_back(fix_step(b, s, pieces, idx, flags));
  std::optional<Cells> preferred;
  if (idx < guide.size()) preferred = sorted_cells(piece_cells(guide[idx]));
  auto key = [&](const Step& st) {
    const bool guided = preferred && sorted_cells(piece_cells(st.placement)) == *preferred;
    return std::make_tuple(!guided, st.board.height(), leftmost(st.placement), st.placement.orient & 3,
                           sorted_cells(piece_cells(st.placement)));
  };
  std::stable_sort(out.begin(), out.end(), [&](const Step& a, const Step& b) { return key(a) < key(b); });
  return out;
}

struct Key {
  Board board;
  std::size_t idx;
  long long need;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    return BoardHash{}(k.board) * 1000003u + k.idx * 7919u + static_cast<std::size_t>(k.need);
  }
};

struct OutOfBudget {};
struct Cancelled {};

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Shared between workers.
struct Shared {
  const SearchBudget& budget;
  Clock clock;
  std::atomic<long long> nodes{0};
  std::atomic<long long> pruned{0};
  std::atomic<long long> winner{std::numeric_limits<long long>::max()};
  explicit Shared(const SearchBudget& b) : budget(b) {}
  void tick() {
    const long long n = ++nodes;
    if (n > budget.max_nodes) throw OutOfBudget{};
    if ((n & 255) == 0 && clock.seconds() > budget.max_seconds) throw OutOfBudget{};
  }
};

// Room left before the objective holds.
long long initial_need(const Objective& o) {
  switch (o.kind) {
    case ObjectiveKind::RowsCleared:
    case ObjectiveKind::Tetrises:
      return o.value;
    default:
      return 0;
  }
}

long long next_need(const Objective& o, long long need, const Step& st) {
  switch (o.kind) {
    case ObjectiveKind::RowsCleared: return std::max(0LL, need - st.cleared);
    case ObjectiveKind::Tetrises: return std::max(0LL, need - (st.cleared >= 4 ? 1 : 0));
    default: return 0;
  }
}

bool satisfied(const Objective& o, long long need, std::size_t idx, std::size_t n) {
  switch (o.kind) {
    case ObjectiveKind::RowsCleared:
    case ObjectiveKind::Tetrises:
      return need <= 0;
    case ObjectiveKind::PiecesPlaced: return static_cast<long long>(idx) >= o.value;
    case ObjectiveKind::MaxHeight: return idx == n;
  }
  return false;
}

// Depth-first search for a placement sequence meeting the objective.
struct DecisionSearch {
  const GeneratedGame& g;
  RotationModel model;
  const RuleFlags& flags;
  const Objective& obj;
  bool prune;
  const std::vector<PieceState>& guide;
  Shared& sh;
  long long root_index = -1;  // subtree this worker owns, for cancellation
  std::unordered_set<Key, KeyHash> failed;
  std::vector<PieceState> path;

  bool unfillable(const Board& b) const {
    for (int j = 1; j <= g.meta.s; ++j)
      if (!detect_unfillable(extract_bucket(b, j, g.meta)).empty()) return true;
    return false;
  }

  // Pruning stops once any row has cleared.
  bool dfs(const Board& b, std::size_t idx, long long need, bool cleared_any) {
    if (satisfied(obj, need, idx, g.pieces.size())) return true;
    if (idx >= g.pieces.size()) return false;
    Key key{b, idx, need};
    if (failed.count(key)) return false;
    sh.tick();
    if (root_index >= 0 && sh.winner.load() < root_index) throw Cancelled{};
    for (Step& st : expand(b, g.pieces, idx, model, flags, guide)) {
      if (obj.kind == ObjectiveKind::MaxHeight && (st.height > obj.value || st.lost)) continue;
      const long long nn = next_need(obj, need, st);
      const bool any = cleared_any || st.cleared > 0;
      if (prune && !any && unfillable(st.board)) {
        ++sh.pruned;
        continue;
      }
      path.push_back(st.placement);
      if (st.lost) {
        if (satisfied(obj, nn, idx + 1, g.pieces.size())) return true;
      } else if (dfs(st.board, idx + 1, nn, any)) {
        return true;
      }
      path.pop_back();
    }
    failed.insert(std::move(key));
    return false;
  }
};

// Extends a winning prefix with the first available placement per piece; the
// monotone objectives keep holding.
void complete(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, std::vector<PieceState>& placements) {
  Board b = flags.no_loss ? keep_margin(g.board) : g.board;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    Step st = fix_step(b, placements[i], g.pieces, i, flags);
    if (st.lost) return;
    b = std::move(st.board);
  }
  for (std::size_t i = placements.size(); i < g.pieces.size(); ++i) {
    auto steps = expand(b, g.pieces, i, m, flags, {});
    if (steps.empty()) return;
    placements.push_back(steps[0].placement);
    if (steps[0].lost) return;
    b = std::move(steps[0].board);
  }
}

// Move scripts for the placements, replayed through the game engine.
void attach_witness(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, SolveResult& r) {
  Board b = flags.no_loss ? keep_margin(g.board) : g.board;
  r.witness.clear();
  for (std::size_t i = 0; i < r.placements.size(); ++i) {
    r.witness.push_back(plan_path(b, g.pieces[i], r.placements[i], m, flags));
    b = fix_step(b, r.placements[i], g.pieces, i, flags).board;
  }
  r.stats = run_game(g.board, g.pieces, r.witness, m, flags);
}

bool initially_lost(const GeneratedGame& g, const RuleFlags& flags) {
  return !flags.no_loss && !g.pieces.empty() && entry_blocked(g.pieces[0], g.board);
}

PlayStats start_stats(const GeneratedGame& g, const RuleFlags& flags) {
  PlayStats s;
  s.max_filled_height = (flags.no_loss ? keep_margin(g.board) : g.board).height();
  s.lost = initially_lost(g, flags);
  return s;
}

}  // namespace

SolveResult solve_decision(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, const Objective& obj,
                           const SearchBudget& budget, bool prune, const SolveOptions& opts) {
  check_budget(budget);
  if (obj.value < 0) throw std::invalid_argument("objective value must be non-negative");
  if (prune && !prune_allowed(g, obj))
    throw std::invalid_argument("pruning needs a base reduction board and the full-clear objective");
  SolveResult res;
  const Board start = flags.no_loss ? keep_margin(g.board) : g.board;
  const long long need0 = initial_need(obj);
  if (obj.kind == ObjectiveKind::MaxHeight && start.height() > obj.value) return res;
  if (satisfied(obj, need0, 0, g.pieces.size())) {
    res.decision = Decision::Yes;
  } else if (!initially_lost(g, flags)) {
    Shared sh(budget);
    sh.tick();
    const std::vector<Step> roots = expand(start, g.pieces, 0, m, flags, opts.guide);
    const long long n = static_cast<long long>(roots.size());
    // Per-root outcome: 1 yes, 0 no, -1 budget, -2 cancelled.
    std::vector<int> outcome(roots.size(), -2);
    std::vector<std::vector<PieceState>> paths(roots.size());
    auto run = [&](long long k, DecisionSearch& ds) {
      if (sh.winner.load() < k) return;
      const Step& st = roots[k];
      try {
        if (obj.kind == ObjectiveKind::MaxHeight && (st.height > obj.value || st.lost)) {
          outcome[k] = 0;
          return;
        }
        const long long nn = next_need(obj, need0, st);
        if (prune && st.cleared == 0 && ds.unfillable(st.board)) {
          ++sh.pruned;
          outcome[k] = 0;
          return;
        }
        ds.path.clear();
        const bool ok = st.lost ? satisfied(obj, nn, 1, g.pieces.size()) : ds.dfs(st.board, 1, nn, st.cleared > 0);
        outcome[k] = ok ? 1 : 0;
        if (ok) {
          paths[k].push_back(st.placement);
          paths[k].insert(paths[k].end(), ds.path.begin(), ds.path.end());
          long long cur = sh.winner.load();
          while (k < cur && !sh.winner.compare_exchange_weak(cur, k)) {
          }
        }
      } catch (const OutOfBudget&) {
        outcome[k] = -1;
      } catch (const Cancelled&) {
        outcome[k] = -2;
      }
    };
    if (opts.jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(opts.jobs)
      for (long long k = 0; k < n; ++k) {
        DecisionSearch ds{g, m, flags, obj, prune, opts.guide, sh, k, {}, {}};
        run(k, ds);
      }
    } else {
      // One memo across all roots.
      DecisionSearch ds{g, m, flags, obj, prune, opts.guide, sh, -1, {}, {}};
      for (long long k = 0; k < n; ++k) {
        run(k, ds);
        if (outcome[k] != 0) break;
      }
    }
    res.nodes = sh.nodes.load();
    res.pruned = sh.pruned.load();
    // First root that is not a plain no decides.
    res.decision = Decision::No;
    for (long long k = 0; k < n; ++k) {
      if (outcome[k] == 0) continue;
      if (outcome[k] == 1) {
        res.decision = Decision::Yes;
        res.placements = paths[k];
      } else {
        res.decision = Decision::BudgetExhausted;
      }
      break;
    }
  }
  if (res.decision == Decision::Yes) {
    if (obj.kind != ObjectiveKind::MaxHeight) complete(g, m, flags, res.placements);
    attach_witness(g, m, flags, res);
    if (!evaluate(res.stats, obj)) throw std::logic_error("solver witness does not replay to the objective");
  } else {
    res.stats = start_stats(g, flags);
  }
  return res;
}

namespace {

struct OracleNode {
  Board board;
  long long rows = 0;
  long long tetrises = 0;
  bool lost = false;
  int parent = -1;
  PieceState placed;
};

// Every fixed state reachable by legal moves, found by walking move by move.
std::vector<PieceState> oracle_fixes(const Board& b, PieceType t, RotationModel m, const RuleFlags& flags) {
  struct S {
    PieceState s;
    int used;
  };
  auto enc = [](const S& x) {
    return std::make_tuple(x.s.row, x.s.col, x.s.orient & 3, x.s.fixed, x.used);
  };
  std::set<decltype(enc(S{}))> seen;
  std::deque<S> q;
  S s0{initial_state(t, b), 0};
  seen.insert(enc(s0));
  q.push_back(s0);
  std::vector<PieceState> out;
  while (!q.empty()) {
    S cur = q.front();
    q.pop_front();
    if (cur.s.fixed) {
      out.push_back(cur.s);
      continue;
    }
    for (Move mv : legal_moves(cur.s, b, m, flags, cur.used)) {
      S nx{apply_move(cur.s, b, m, mv), 0};
      if (flags.agility_limit && mv != Move::Drop && mv != Move::Fix) nx.used = cur.used + 1;
      if (nx.s.fixed) nx.used = 0;
      if (seen.insert(enc(nx)).second) q.push_back(nx);
    }
  }
  return out;
}

}  // namespace

SolveResult brute_force_oracle(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, const Objective& obj,
                               const SearchBudget& budget) {
  check_budget(budget);
  if (static_cast<long long>(g.board.rows()) * g.board.cols() > budget.oracle_cells)
    throw OracleCapExceeded("board has more than " + std::to_string(budget.oracle_cells) + " cells");
  if (static_cast<int>(g.pieces.size()) > budget.oracle_pieces)
    throw OracleCapExceeded("more than " + std::to_string(budget.oracle_pieces) + " pieces");
  const std::size_t n = g.pieces.size();
  const Board start = flags.no_loss ? keep_margin(g.board) : g.board;
  const int h0 = start.height();
  auto good = [&](const OracleNode& x, std::size_t placed) {
    switch (obj.kind) {
      case ObjectiveKind::RowsCleared: return x.rows >= obj.value;
      case ObjectiveKind::Tetrises: return x.tetrises >= obj.value;
      case ObjectiveKind::PiecesPlaced: return static_cast<long long>(placed) >= obj.value;
      case ObjectiveKind::MaxHeight: return placed == n && !x.lost && h0 <= obj.value;
    }
    return false;
  };
  std::vector<OracleNode> all;
  std::vector<std::size_t> layer;
  all.push_back(OracleNode{start, 0, 0, initially_lost(g, flags), -1, {}});
  layer.push_back(0);
  SolveResult res;
  Clock clock;
  long long found = good(all[0], 0) ? 0 : -1;
  for (std::size_t i = 0; i < n && found < 0; ++i) {
    std::vector<std::size_t> next;
    // Capped counters make equal futures share a key.
    std::unordered_set<Key, KeyHash> seen;
    for (std::size_t at : layer) {
      if (all[at].lost) continue;
      if (++res.nodes > budget.max_nodes || clock.seconds() > budget.max_seconds) {
        res.decision = Decision::BudgetExhausted;
        return res;
      }
      const Board cur = all[at].board;
      if (entry_blocked(g.pieces[i], cur)) continue;
      for (const PieceState& f : oracle_fixes(cur, g.pieces[i], m, flags)) {
        OracleNode x;
        Board placed = cur;
        for (const Cell& c : piece_cells(f)) placed.set(c);
        const int hb = placed.height();
        if (obj.kind == ObjectiveKind::MaxHeight && hb > obj.value) continue;
        const bool has_next = i + 1 < n;
        bool lost = has_next && !flags.no_loss && flags.loss_mode == LossMode::Immediate &&
                    entry_blocked(g.pieces[i + 1], placed);
        const int cleared = placed.clear_full_rows();
        if (has_next && !flags.no_loss && entry_blocked(g.pieces[i + 1], placed)) lost = true;
        x.board = flags.no_loss ? keep_margin(placed) : placed;
        x.rows = all[at].rows + cleared;
        x.tetrises = all[at].tetrises + (cleared >= 4 ? 1 : 0);
        x.lost = lost;
        x.parent = static_cast<int>(at);
        x.placed = f;
        if (obj.kind == ObjectiveKind::MaxHeight && lost) continue;
        long long cap = 0;
        if (obj.kind == ObjectiveKind::RowsCleared) cap = std::min(x.rows, obj.value);
        if (obj.kind == ObjectiveKind::Tetrises) cap = std::min(x.tetrises, obj.value);
        if (!seen.insert(Key{x.board, lost ? 1u : 0u, cap}).second) continue;
        all.push_back(std::move(x));
        next.push_back(all.size() - 1);
        if (good(all.back(), i + 1)) {
          found = static_cast<long long>(all.size() - 1);
          break;
        }
      }
      if (found >= 0) break;
    }
    layer = std::move(next);
  }
  if (found < 0) {
    res.decision = Decision::No;
    res.stats = start_stats(g, flags);
    return res;
  }
  res.decision = Decision::Yes;
  for (long long k = found; all[k].parent >= 0; k = all[k].parent) res.placements.push_back(all[k].placed);
  std::reverse(res.placements.begin(), res.placements.end());
  attach_witness(g, m, flags, res);
  if (!evaluate(res.stats, obj)) throw std::logic_error("oracle witness does not replay to the objective");
  return res;
}

namespace {

constexpr long long kInfeasible = std::numeric_limits<long long>::max() / 4;

struct Memo {
  long long value;
  int choice;  // index into the sorted children, -1 at a leaf
};

struct OptimizeSearch {
  const GeneratedGame& g;
  RotationModel model;
  const RuleFlags& flags;
  ObjectiveKind metric;
  Shared& sh;
  std::unordered_map<Key, Memo, KeyHash> memo;
  // Incumbent: path to a node whose future is known exactly.
  long long best = -1;
  std::vector<PieceState> best_path;
  Board best_board;
  std::size_t best_idx = 0;
  bool best_leaf = true;
  std::vector<PieceState> path;

  bool minimize() const { return metric == ObjectiveKind::MaxHeight; }

  long long gain(const Step& st) const {
    switch (metric) {
      case ObjectiveKind::RowsCleared: return st.cleared;
      case ObjectiveKind::Tetrises: return st.cleared >= 4 ? 1 : 0;
      case ObjectiveKind::PiecesPlaced: return 1;
      case ObjectiveKind::MaxHeight: return st.height;
    }
    return 0;
  }

  long long combine(long long g0, long long future) const {
    if (minimize()) return future >= kInfeasible ? kInfeasible : std::max(g0, future);
    return g0 + future;
  }

  bool better(long long a, long long b) const { return minimize() ? a < b : a > b; }

  void offer(long long acc, long long future, const Board& b, std::size_t idx) {
    const long long total = combine(acc, future);
    if (minimize() && total >= kInfeasible) return;
    if (best < 0 || better(total, best)) {
      best = total;
      best_path = path;
      best_board = b;
      best_idx = idx;
      best_leaf = false;
    }
  }

  // Best value of the rest of the game from this node.
  long long solve(const Board& b, std::size_t idx, long long acc) {
    if (idx >= g.pieces.size()) {
      offer(acc, 0, b, idx);
      return 0;
    }
    Key key{b, idx, 0};
    if (auto it = memo.find(key); it != memo.end()) {
      offer(acc, it->second.value, b, idx);
      return it->second.value;
    }
    sh.tick();
    const std::vector<Step> steps = expand(b, g.pieces, idx, model, flags, {});
    Memo mm{minimize() ? kInfeasible : 0, -1};
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const Step& st = steps[k];
      const long long gv = gain(st);
      path.push_back(st.placement);
      long long v;
      if (st.lost) {
        v = minimize() ? kInfeasible : gv;
        if (!minimize()) {
          const long long total = acc + gv;
          if (best < 0 || total > best) {
            best = total;
            best_path = path;
            best_leaf = true;
          }
        }
      } else {
        v = combine(gv, solve(st.board, idx + 1, combine(acc, gv)));
      }
      path.pop_back();
      if (mm.choice < 0 ? (!minimize() || v < kInfeasible) : better(v, mm.value)) mm = Memo{v, static_cast<int>(k)};
    }
    if (steps.empty() || mm.choice < 0) offer(acc, mm.value, b, idx);
    memo.emplace(std::move(key), mm);
    return mm.value;
  }

  // Follows memo choices from a node to the end of the game.
  void follow(Board b, std::size_t idx, std::vector<PieceState>& out) const {
    while (idx < g.pieces.size()) {
      auto it = memo.find(Key{b, idx, 0});
      if (it == memo.end() || it->second.choice < 0) return;
      const std::vector<Step> steps = expand(b, g.pieces, idx, model, flags, {});
      const Step& st = steps[it->second.choice];
      out.push_back(st.placement);
      if (st.lost) return;
      b = st.board;
      ++idx;
    }
  }
};

}  // namespace

SolveResult solve_optimize(const GeneratedGame& g, RotationModel m, const RuleFlags& flags, ObjectiveKind metric,
                           const SearchBudget& budget) {
  check_budget(budget);
  SolveResult res;
  const Board start = flags.no_loss ? keep_margin(g.board) : g.board;
  const bool minimize = metric == ObjectiveKind::MaxHeight;
  if (initially_lost(g, flags)) {
    res.stats = start_stats(g, flags);
    res.decision = minimize ? Decision::No : Decision::Yes;
    res.value = 0;
    return res;
  }
  Shared sh(budget);
  OptimizeSearch os{g, m, flags, metric, sh, {}, -1, {}, {}, 0, true, {}};
  bool exact = true;
  try {
    os.solve(start, 0, minimize ? start.height() : 0);
  } catch (const OutOfBudget&) {
    exact = false;
  }
  res.nodes = sh.nodes.load();
  if (os.best < 0) {
    res.decision = exact ? Decision::No : Decision::BudgetExhausted;
    res.stats = start_stats(g, flags);
    return res;
  }
  res.value = os.best;
  res.placements = os.best_path;
  if (!os.best_leaf) os.follow(os.best_board, os.best_idx, res.placements);
  if (!minimize) complete(g, m, flags, res.placements);
  attach_witness(g, m, flags, res);
  res.decision = exact ? Decision::Yes : Decision::BudgetExhausted;
  long long replayed = 0;
  switch (metric) {
    case ObjectiveKind::RowsCleared: replayed = res.stats.rows_cleared; break;
    case ObjectiveKind::Tetrises: replayed = res.stats.tetrises; break;
    case ObjectiveKind::PiecesPlaced: replayed = res.stats.pieces_placed; break;
    case ObjectiveKind::MaxHeight: replayed = res.stats.max_filled_height; break;
  }
  if (minimize ? replayed > res.value : replayed < res.value)
    throw std::logic_error("optimizer witness does not replay to its value");
  return res;
}

}  // namespace tetris
