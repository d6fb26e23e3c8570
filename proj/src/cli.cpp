#include "tetris/cli.hpp"

#include <omp.h>

#include <sstream>

#include "CLI11.hpp"
#include "tetris/analysis.hpp"
#include "tetris/player.hpp"
#include "tetris/reduction.hpp"
#include "tetris/solver.hpp"
#include "tetris/textio.hpp"

namespace tetris {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rules {
  std::string rotation = "inst";
  std::string loss = "after-clear";
  int agility = 0;
  bool no_loss = false;

  void add(CLI::App* c) {
    c->add_option("--rotation", rotation, "rotation model: inst, cont or tetris");
    c->add_option("--loss", loss, "loss rule: immediate or after-clear");
    c->add_option("--agility", agility, "non-drop moves allowed between drops (0 = unlimited)");
    c->add_flag("--no-loss", no_loss, "infinite staging: the board grows instead of losing");
  }
  RotationModel model() const {
    auto m = parse_model(rotation);
    if (!m) throw Usage("unknown rotation model '" + rotation + "'");
    return *m;
  }
  RuleFlags flags() const {
    RuleFlags f;
    if (loss == "immediate") f.loss_mode = LossMode::Immediate;
    else if (loss == "after-clear") f.loss_mode = LossMode::AfterClear;
    else throw Usage("unknown loss rule '" + loss + "'");
    if (agility < 0) throw Usage("agility must be positive");
    if (agility > 0) f.agility_limit = agility;
    f.no_loss = no_loss;
    return f;
  }
};

struct GameSource {
  std::string instance, board, pieces, variant, epsilon;
  bool normalize = false, mirror = false;
  int staging = -1;

  void add(CLI::App* c, bool files) {
    c->add_option("--instance", instance, "instance file: \"s T\" then the 3s numbers");
    c->add_flag("--normalize", normalize, "normalize the instance before building");
    c->add_option("--variant", variant, "tetrises, survival, inapprox-pieces, inapprox-rows or inapprox-height");
    c->add_option("--epsilon", epsilon, "epsilon for the inapprox variants, as p/q");
    c->add_option("--staging", staging, "staging rows above the payload");
    c->add_flag("--mirror", mirror, "mirror the game");
    if (files) {
      c->add_option("--board", board, "board file");
      c->add_option("--pieces", pieces, "piece list file");
    }
  }
  Instance load_instance() const {
    Instance inst = parse_instance(read_file(instance));
    return normalize ? tetris::normalize(inst) : inst;
  }
  std::optional<VariantSpec> spec() const {
    if (variant.empty() || variant == "base") {
      if (!epsilon.empty()) throw Usage("--epsilon needs an inapprox variant");
      return std::nullopt;
    }
    auto k = parse_variant(variant);
    if (!k) throw Usage("unknown variant '" + variant + "'");
    VariantSpec v;
    v.kind = *k;
    if (!epsilon.empty()) {
      v.epsilon = parse_rational(epsilon);
      if (!v.epsilon) throw Usage("bad epsilon '" + epsilon + "'");
    }
    return v;
  }
  GeneratedGame game() const {
    if (!instance.empty()) {
      const Instance inst = load_instance();
      auto v = spec();
      GeneratedGame g = v ? build_variant(inst, *v, staging) : build_game(inst, staging);
      return mirror ? mirror_game(g) : g;
    }
    if (board.empty() || pieces.empty()) throw Usage("give --instance, or both --board and --pieces");
    GeneratedGame g = plain_game(parse_board(read_file(board)), parse_pieces(read_file(pieces)));
    if (mirror) {
      g.board = mirror_board(g.board);
      for (auto& p : g.pieces) p = mirror_piece(p);
    }
    return g;
  }
};

void print_stats(std::ostream& out, const PlayStats& s) {
  out << "rows_cleared " << s.rows_cleared << "\n"
      << "tetrises " << s.tetrises << "\n"
      << "max_filled_height " << s.max_filled_height << "\n"
      << "pieces_placed " << s.pieces_placed << "\n"
      << "lost " << (s.lost ? "yes" : "no") << "\n";
}

bool print_audit(std::ostream& out, const AuditReport& r) {
  for (const auto& l : r.lines)
    out << (l.ok ? "ok   " : "FAIL ") << l.name << ": expected " << l.expected << ", got " << l.actual << "\n";
  return r.ok();
}

Objective objective_arg(const std::string& s) {
  auto o = parse_objective(s);
  if (!o) throw Usage("bad objective '" + s + "' (rows:k, tetrises:k, height:h or pieces:p)");
  return *o;
}

// Bucket regions to analyze: one region file, or every (or one) bucket of a
// board built for an instance.
struct RegionSource {
  std::string region;
  GameSource game;
  int bucket = 0;

  void add(CLI::App* c) {
    c->add_option("--region", region, "six-column bucket region file, payload row 1 at the bottom");
    game.add(c, false);
    c->add_option("--board", game.board, "board played from the instance's game");
    c->add_option("--bucket", bucket, "bucket index (default: all)");
  }
  std::vector<BucketRegion> load() const {
    if (!region.empty()) {
      BucketRegion r;
      r.cells = parse_board(read_file(region));
      if (r.cells.cols() != 6) throw Usage("a bucket region has six columns");
      return {r};
    }
    if (game.instance.empty()) throw Usage("give --region, or --instance with an optional --board");
    GeneratedGame g = game.game();
    const Board b = game.board.empty() ? g.board : parse_board(read_file(game.board));
    if (b.rows() != g.board.rows() || b.cols() != g.board.cols()) throw Usage("board does not match the instance's game");
    std::vector<BucketRegion> out;
    for (int j = 1; j <= g.meta.s; ++j)
      if (bucket == 0 || bucket == j) out.push_back(extract_bucket(b, j, g.meta));
    if (out.empty()) throw Usage("bucket index out of range");
    return out;
  }
};

// Final fixed state of every piece in a played game.
std::vector<PieceState> final_states(const Board& b, const std::vector<PieceType>& pieces,
                                     const std::vector<Trajectory>& trajs, RotationModel m, const RuleFlags& flags) {
  std::vector<PieceState> out;
  Board cur = flags.no_loss ? keep_margin(b) : b;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    PieceOutcome o = run_trajectory(cur, pieces[i], trajs[i], m, flags, std::nullopt, i);
    out.push_back(o.final_state);
    cur = flags.no_loss ? keep_margin(o.board) : std::move(o.board);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline Tetris: reductions, play, analysis and search"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  int result = 0;
  auto fail = [&](const std::string& why) {
    err << why << "\n";
    result = 1;
  };

  // reduce
  GameSource reduce_src;
  std::string reduce_board, reduce_pieces;
  long long reduce_cap = kDefaultCellCap;
  auto* reduce = app.add_subcommand("reduce", "build the game for an instance");
  reduce_src.add(reduce, false);
  reduce->add_option("--out-board", reduce_board, "board output file");
  reduce->add_option("--out-pieces", reduce_pieces, "piece list output file");
  reduce->add_option("--cell-cap", reduce_cap, "largest board to materialize");
  reduce->callback([&] {
    if (reduce_src.instance.empty()) throw Usage("reduce needs --instance");
    const Instance inst = reduce_src.load_instance();
    auto v = reduce_src.spec();
    GeneratedGame g = v ? build_variant(inst, *v, reduce_src.staging, reduce_cap) : build_game(inst, reduce_src.staging);
    if (reduce_src.mirror) g = mirror_game(g);
    if (!reduce_board.empty()) {
      if (!g.meta.materialized) throw Usage("board too large to write: " + g.meta.note);
      write_file(reduce_board, render_board(g.board));
    }
    if (!reduce_pieces.empty()) write_file(reduce_pieces, render_pieces(g.pieces));
    out << "variant " << g.meta.variant << (g.meta.mirrored ? " (mirrored)" : "") << "\n";
    out << "board " << g.board.rows() << " x " << g.board.cols() << (g.meta.materialized ? "" : " (not built)")
        << "\n";
    out << "pieces " << g.pieces.size() << "\n";
    bool ok = print_audit(out, counting_audit(g));
    if (v) ok = print_audit(out, variant_audit(g, *v)) && ok;
    if (!ok) fail("audit failed");
  });

  // normalize
  std::string norm_in, norm_out;
  auto* norm = app.add_subcommand("normalize", "multiply the numbers and T by 4s");
  norm->add_option("--instance", norm_in, "instance file")->required();
  norm->add_option("--out", norm_out, "output file");
  norm->callback([&] {
    const std::string text = render_instance(normalize(parse_instance(read_file(norm_in))));
    if (norm_out.empty()) out << text;
    else write_file(norm_out, text);
  });

  // validate
  std::string val_in;
  auto* val = app.add_subcommand("validate", "check the instance properties");
  val->add_option("--instance", val_in, "instance file")->required();
  val->callback([&] {
    const ValidationReport r = validate_instance(parse_instance(read_file(val_in)));
    out << "sum " << (r.sum_ok ? "ok" : "no") << "\n"
        << "bounds " << (r.bounds_ok ? "ok" : "no") << "\n"
        << "T even " << (r.t_even ? "ok" : "no") << "\n"
        << "triples only " << (r.triples_only ? "ok" : "no") << "\n"
        << "gap " << (r.gap_ok ? "ok" : "no") << "\n";
    for (const auto& p : r.problems) out << "problem: " << p << "\n";
    if (!r.ok()) fail("instance is not well formed");
  });

  // synthesize
  GameSource syn_src;
  Rules syn_rules;
  std::string syn_partition, syn_out;
  auto* syn = app.add_subcommand("synthesize", "plan and verify the clearing play for a partition");
  syn_src.add(syn, false);
  syn_rules.add(syn);
  syn->add_option("--partition", syn_partition, "partition file: one bucket index per number");
  syn->add_option("--out-trajectory", syn_out, "trajectory output file");
  syn->callback([&] {
    if (syn_src.instance.empty()) throw Usage("synthesize needs --instance");
    const Instance inst = syn_src.load_instance();
    Partition p;
    if (!syn_partition.empty()) {
      p = parse_partition(read_file(syn_partition));
    } else {
      auto found = find_partition(inst);
      if (!found) {
        fail("instance has no partition");
        return;
      }
      p = *found;
    }
    if (!partition_valid(inst, p)) {
      fail("partition is not valid for the instance");
      return;
    }
    const GeneratedGame g = syn_src.game();
    const Synthesis s = synthesize_and_verify(g, p, syn_rules.model(), syn_rules.flags());
    if (!syn_out.empty()) write_file(syn_out, render_trajectories(s.trajectories));
    std::string ptext = render_partition(p);
    while (!ptext.empty() && ptext.back() == '\n') ptext.pop_back();
    out << "partition " << ptext << "\n";
    print_stats(out, s.stats);
    out << "expected_rows " << s.expected_rows << "\n";
  });

  // verify
  std::string ver_board, ver_pieces, ver_traj, ver_obj;
  Rules ver_rules;
  auto* ver = app.add_subcommand("verify", "replay trajectories and check an objective");
  ver->add_option("--board", ver_board, "board file")->required();
  ver->add_option("--pieces", ver_pieces, "piece list file")->required();
  ver->add_option("--trajectory", ver_traj, "trajectory file")->required();
  ver->add_option("--objective", ver_obj, "rows:k, tetrises:k, height:h or pieces:p");
  ver_rules.add(ver);
  ver->callback([&] {
    const Board b = parse_board(read_file(ver_board));
    const auto pieces = parse_pieces(read_file(ver_pieces));
    const auto trajs = parse_trajectories(read_file(ver_traj));
    std::optional<Objective> obj;
    if (!ver_obj.empty()) obj = objective_arg(ver_obj);
    if (trajs.size() > pieces.size()) throw Usage("more trajectories than pieces");
    try {
      const PlayStats s = run_game(b, pieces, trajs, ver_rules.model(), ver_rules.flags());
      print_stats(out, s);
      if (obj) {
        const bool ok = evaluate(s, *obj);
        out << "objective " << objective_string(*obj) << " " << (ok ? "holds" : "fails") << "\n";
        if (!ok) fail("objective fails");
      }
    } catch (const IllegalMove& e) {
      out << "illegal piece " << e.piece_index << " move " << e.move_index << "\n";
      fail(e.what());
    } catch (const BlockedEntry& e) {
      out << "blocked piece " << e.piece_index << "\n";
      fail(e.what());
    }
  });

  // solve
  GameSource sol_src;
  Rules sol_rules;
  std::string sol_obj, sol_max, sol_out;
  bool sol_prune = false, sol_oracle = false;
  SearchBudget sol_budget;
  int sol_jobs = 1;
  auto* sol = app.add_subcommand("solve", "search for a play meeting an objective");
  sol_src.add(sol, true);
  sol_rules.add(sol);
  sol->add_option("--objective", sol_obj, "rows:k, tetrises:k, height:h or pieces:p");
  sol->add_option("--maximize", sol_max, "optimize rows, tetrises, pieces, or height (smallest peak)");
  sol->add_flag("--prune", sol_prune, "discard placements leaving an unfillable bucket");
  sol->add_flag("--oracle", sol_oracle, "use the exhaustive oracle");
  sol->add_option("--budget-nodes", sol_budget.max_nodes, "node budget");
  sol->add_option("--budget-seconds", sol_budget.max_seconds, "time budget");
  sol->add_option("--jobs", sol_jobs, "workers for the root fan-out");
  sol->add_option("--out-trajectory", sol_out, "witness output file");
  sol->callback([&] {
    if (sol_obj.empty() == sol_max.empty()) throw Usage("give exactly one of --objective and --maximize");
    if (sol_jobs < 1) throw Usage("--jobs must be positive");
    const GeneratedGame g = sol_src.game();
    SolveResult r;
    if (!sol_max.empty()) {
      auto o = parse_objective(sol_max + ":0");
      if (!o || sol_prune || sol_oracle) throw Usage("bad --maximize use");
      r = solve_optimize(g, sol_rules.model(), sol_rules.flags(), o->kind, sol_budget);
      out << "decision " << decision_name(r.decision) << "\n";
      if (r.decision != Decision::No) out << "value " << r.value << "\n";
    } else {
      const Objective o = objective_arg(sol_obj);
      if (sol_oracle) {
        if (sol_prune) throw Usage("the oracle never prunes");
        r = brute_force_oracle(g, sol_rules.model(), sol_rules.flags(), o, sol_budget);
      } else {
        r = solve_decision(g, sol_rules.model(), sol_rules.flags(), o, sol_budget, sol_prune, {sol_jobs, {}});
      }
      out << "decision " << decision_name(r.decision) << "\n";
    }
    out << "nodes " << r.nodes << "\n";
    if (sol_prune) out << "pruned " << r.pruned << "\n";
    if (!r.witness.empty() || r.decision == Decision::Yes) print_stats(out, r.stats);
    if (!sol_out.empty() && r.decision != Decision::No) write_file(sol_out, render_trajectories(r.witness));
    if (r.decision == Decision::BudgetExhausted) fail("search budget exhausted");
    else if (r.decision == Decision::No) fail("no play meets the objective");
  });

  // classify
  RegionSource cls_src;
  auto* cls = app.add_subcommand("classify", "name the configuration of bucket regions");
  cls_src.add(cls);
  cls->callback([&] {
    for (const BucketRegion& r : cls_src.load()) {
      const BucketLabel l = classify_bucket(r);
      out << "bucket " << r.bucket << ": " << label_name(l);
      if (l.kind != LabelKind::Unknown) out << " base " << l.base;
      out << "\n";
    }
  });

  // detect
  RegionSource det_src;
  auto* det = app.add_subcommand("detect", "find unfillability witnesses in bucket regions");
  det_src.add(det);
  det->callback([&] {
    bool any = false;
    for (const BucketRegion& r : det_src.load()) {
      const auto found = detect_unfillable(r);
      out << "bucket " << r.bucket << ": " << (found.empty() ? "none" : std::to_string(found.size()) + " found") << "\n";
      for (const auto& u : found) out << "  " << u.str() << "\n";
      any = any || !found.empty();
    }
    if (any) fail("unfillable bucket");
  });

  // props
  std::string props_id, props_rotation = "inst";
  bool props_all = false, props_list = false;
  int props_jobs = 0;
  auto* props = app.add_subcommand("props", "check placement propositions");
  props->add_option("--id", props_id, "one proposition");
  props->add_flag("--all", props_all, "every proposition");
  props->add_flag("--list", props_list, "list the propositions");
  props->add_option("--rotation", props_rotation, "rotation model");
  props->add_option("--jobs", props_jobs, "worker threads (0 = default)");
  props->callback([&] {
    if (props_list) {
      for (const auto& id : proposition_ids()) out << id << ": " << proposition_statement(id) << "\n";
      return;
    }
    if (props_all == !props_id.empty()) throw Usage("give exactly one of --id and --all");
    auto m = parse_model(props_rotation);
    if (!m) throw Usage("unknown rotation model '" + props_rotation + "'");
    if (props_jobs < 0) throw Usage("--jobs must not be negative");
    if (props_jobs > 0) omp_set_num_threads(props_jobs);
    std::vector<PropositionResult> rs;
    if (props_all) {
      rs = run_all_propositions(*m);
    } else {
      const auto ids = proposition_ids();
      if (std::find(ids.begin(), ids.end(), props_id) == ids.end()) throw Usage("unknown proposition '" + props_id + "'");
      rs.push_back(run_proposition(props_id, *m));
    }
    int failed = 0;
    for (const auto& r : rs) {
      out << (r.pass ? "PASS " : "FAIL ") << r.id << " (" << r.initial_configs << " configs, " << r.placements
          << " placements, " << r.flagged << " flagged, " << r.matched << " matched)\n";
      for (const auto& f : r.failures) out << "  " << f << "\n";
      failed += r.pass ? 0 : 1;
    }
    if (failed) fail(std::to_string(failed) + " propositions failed");
  });

  // check-rotation
  std::string cr_model;
  auto* cr = app.add_subcommand("check-rotation", "check the reasonability conditions of a rotation model");
  cr->add_option("--model", cr_model, "inst, cont or tetris")->required();
  cr->callback([&] {
    auto m = parse_model(cr_model);
    if (!m) throw Usage("unknown rotation model '" + cr_model + "'");
    const auto rep = check_reasonable(*m);
    out << render_report(rep);
    if (!rep.pass()) fail("rotation model is not reasonable");
  });

  // render
  std::string rend_board, rend_piece;
  std::vector<int> rend_state;
  auto* rend = app.add_subcommand("render", "print a board, optionally with a piece drawn in");
  rend->add_option("--board", rend_board, "board file")->required();
  rend->add_option("--piece", rend_piece, "piece type to draw");
  rend->add_option("--state", rend_state, "orientation, row and column of the piece")->expected(3);
  rend->callback([&] {
    const Board b = parse_board(read_file(rend_board));
    if (rend_piece.empty()) {
      if (!rend_state.empty()) throw Usage("--state needs --piece");
      out << render_board(b);
      return;
    }
    auto t = parse_piece(rend_piece);
    if (!t || rend_state.size() != 3) throw Usage("--piece needs a piece name and --state o r c");
    PieceState s{*t, rend_state[0] & 3, rend_state[1], rend_state[2], false};
    if (!b.fits(piece_cells(s))) throw Usage("piece overlaps the board or leaves it");
    out << render_board(b, s);
  });

  // audit
  GameSource aud_src;
  long long aud_cap = kDefaultCellCap;
  auto* aud = app.add_subcommand("audit", "check the gridsquare counts of a built game");
  aud_src.add(aud, false);
  aud->add_option("--cell-cap", aud_cap, "largest board to materialize");
  aud->callback([&] {
    if (aud_src.instance.empty()) throw Usage("audit needs --instance");
    const Instance inst = aud_src.load_instance();
    auto v = aud_src.spec();
    GeneratedGame g = v ? build_variant(inst, *v, aud_src.staging, aud_cap) : build_game(inst, aud_src.staging);
    if (aud_src.mirror) g = mirror_game(g);
    bool ok = print_audit(out, counting_audit(g));
    if (v) ok = print_audit(out, variant_audit(g, *v)) && ok;
    if (!ok) fail("audit failed");
  });

  // mirror
  std::string mir_board, mir_pieces, mir_traj, mir_ob, mir_op, mir_ot;
  Rules mir_rules;
  auto* mir = app.add_subcommand("mirror", "mirror a board, its pieces and optionally a play");
  mir->add_option("--board", mir_board, "board file")->required();
  mir->add_option("--pieces", mir_pieces, "piece list file")->required();
  mir->add_option("--trajectory", mir_traj, "trajectory file to replan on the mirrored board");
  mir->add_option("--out-board", mir_ob, "mirrored board file")->required();
  mir->add_option("--out-pieces", mir_op, "mirrored piece list file")->required();
  mir->add_option("--out-trajectory", mir_ot, "mirrored trajectory file");
  mir_rules.add(mir);
  mir->callback([&] {
    const Board b = parse_board(read_file(mir_board));
    const auto pieces = parse_pieces(read_file(mir_pieces));
    const Board mb = mirror_board(b);
    std::vector<PieceType> mp;
    for (PieceType p : pieces) mp.push_back(mirror_piece(p));
    write_file(mir_ob, render_board(mb));
    write_file(mir_op, render_pieces(mp));
    out << "board " << mb.rows() << " x " << mb.cols() << "\n";
    if (mir_traj.empty()) {
      if (!mir_ot.empty()) throw Usage("--out-trajectory needs --trajectory");
      return;
    }
    if (mir_ot.empty()) throw Usage("--trajectory needs --out-trajectory");
    const RotationModel m = mir_rules.model();
    const RuleFlags flags = mir_rules.flags();
    const auto trajs = parse_trajectories(read_file(mir_traj));
    if (trajs.size() > pieces.size()) throw Usage("more trajectories than pieces");
    std::vector<PieceState> fixed;
    try {
      fixed = final_states(b, pieces, trajs, m, flags);
    } catch (const IllegalMove& e) {
      fail(e.what());
      return;
    }
    // Replan each mirrored placement on the mirrored board.
    std::vector<Trajectory> mt;
    Board cur = flags.no_loss ? keep_margin(mb) : mb;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      Cells cs = piece_cells(fixed[i]);
      for (Cell& c : cs) c.col = mb.cols() + 1 - c.col;
      auto target = state_for_cells(mp[i], cs);
      if (!target) throw std::logic_error("mirrored placement has no state");
      target->fixed = true;
      try {
        mt.push_back(plan_path(cur, mp[i], *target, m, flags));
      } catch (const Unreachable& e) {
        fail("mirrored piece " + std::to_string(i) + " cannot be placed: " + e.what());
        return;
      }
      PieceOutcome o = run_trajectory(cur, mp[i], mt.back(), m, flags, std::nullopt, i);
      cur = flags.no_loss ? keep_margin(o.board) : std::move(o.board);
    }
    write_file(mir_ot, render_trajectories(mt));
    print_stats(out, run_game(mb, mp, mt, m, flags));
  });

  std::vector<std::string> argv_store{"tetris"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInstance& e) {
    err << "invalid instance: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "size limit: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return result;
}

}  // namespace tetris
