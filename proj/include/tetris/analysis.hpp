#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/game.hpp"
#include "tetris/reduction.hpp"
#include "tetris/rotation.hpp"

namespace tetris {

// Six columns of one bucket over the payload rows. Row r is a notch row when
// r % 6 == notch_phase % 6.
struct BucketRegion {
  Board cells;
  int bucket = 1;
  int notch_phase = 5;
  int rows() const { return cells.rows(); }
  bool notch_row(int r) const { return r >= 1 && r % 6 == notch_phase % 6; }
  bool notch_open(int r) const { return notch_row(r) && cells.open(r, 4) && cells.open(r, 5); }
  friend bool operator==(const BucketRegion& a, const BucketRegion& b) {
    return a.cells == b.cells && a.notch_phase == b.notch_phase;
  }
};

BucketRegion extract_bucket(const Board& board, int j, const GameMeta& meta);

// Payload layout of one bucket with nothing placed.
BucketRegion empty_bucket(int rows);

enum class LabelKind {
  Unprepped,
  Overflat,
  TallPlateau,
  TriggerHappy,
  ShortPlateau,
  Underflat,
  IUp,
  LgPrepped,
  IPreppedLg,
  LgPreppedLg,
  LgTplat,
  LgUnderflat,
  LgUnapproachable,
  LgLgUnapproachable,
  LgOf1,
  LgOf2,
  LgOf3,
  LgOfD,
  LgThappy,
  LgLgThappy,
  Unknown
};

enum class Side { None, Left, Right };

// i and j count open notches upward from the lowest one above the base shape,
// starting at 1.
struct BucketLabel {
  LabelKind kind = LabelKind::Unknown;
  int i = 0;
  int j = 0;
  Side side = Side::None;
  int base = 0;  // fill level the template sits on, a multiple of 6
  friend bool operator==(const BucketLabel&, const BucketLabel&) = default;
};

std::string label_name(const BucketLabel& l);
std::string kind_name(LabelKind k);

// Region matching the template exactly; nullopt when it does not fit.
std::optional<BucketRegion> template_region(const BucketLabel& l, int rows);

// Unapproachable template (not a valid-play label) on the given base.
BucketRegion unapproachable_region(int rows, int base);

std::vector<BucketLabel> matching_labels(const BucketRegion& r);
BucketLabel classify_bucket(const BucketRegion& r);

enum class UnfillableKind {
  Hole,
  SpurnedNotch,
  BalconiedOXX,
  BalconiedXXO,
  BalconiedXXX,
  BColumn,
  BalconiedB2,
  SubNotchRectangle,
  CeilingDiscrepancy,
  BalconiedGap,
  Unapproachable,
  Floored011 = BalconiedOXX,
  Floored110 = BalconiedXXO,
};

struct Unfillable {
  UnfillableKind kind = UnfillableKind::Hole;
  int row = 0;
  int col = 0;
  int alpha = 0;     // run length, rectangle depth or ceiling gap
  int balcony = 0;   // row of the balcony that seals the pattern, 0 if none
  // Stretch that is both flat-bottomed and spans an open notch; reported
  // under both kinds for manual review.
  bool review = false;
  std::string str() const;
};

std::string unfillable_name(UnfillableKind k);

std::vector<Unfillable> detect_unfillable(const BucketRegion& r);

// Exact cover of the cells by the given pieces, ignoring motion.
inline constexpr int kDefaultTilingCap = 60;
bool tiling_oracle(const std::vector<Cell>& region, const std::vector<PieceType>& pieceset,
                   int cap = kDefaultTilingCap);
std::vector<Cell> open_cells(const BucketRegion& r, int row_lo, int row_hi);

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Every state reachable from the entry state. Includes fixed states.
std::vector<PieceState> reachable_states(const Board& b, PieceType piece, RotationModel m,
                                         const RuleFlags& flags = {});
// Reachable fixed states, one per distinct covered cell set, in discovery
// order.
std::vector<PieceState> reachable_fixed(const Board& b, PieceType piece, RotationModel m,
                                        const RuleFlags& flags = {});

// Local board used to play into a lone bucket: two filled padding columns on
// each side, the bucket in columns 3..8 and open staging rows above.
inline constexpr int kLocalPad = 2;
inline constexpr int kLocalStaging = 8;
Board local_board(const BucketRegion& r);
BucketRegion region_from_local(const Board& local, int rows);

struct FixedPlacement {
  PieceState state;     // in local board coordinates
  BucketRegion result;  // bucket after the fix, nothing cleared
  bool outside = false; // some cell above the payload or outside the bucket
};

inline constexpr int kMaxRegionRows = 200;
std::vector<FixedPlacement> enumerate_fixed_placements(const BucketRegion& r, PieceType piece,
                                                       RotationModel m, const RuleFlags& flags = {});

struct PropositionResult {
  std::string id;
  bool pass = false;
  int initial_configs = 0;
  int placements = 0;
  int flagged = 0;
  int matched = 0;
  std::vector<std::string> failures;
};

// One reachable placement from a proposition's sweep, with its verdict.
struct CorpusEntry {
  BucketLabel initial;
  std::size_t step = 0;
  FixedPlacement placement;
  std::vector<Unfillable> flags;
  BucketLabel label;
};

std::vector<std::string> proposition_ids();
std::vector<CorpusEntry> proposition_corpus(const std::string& id, RotationModel m = RotationModel::Instantaneous);
std::string proposition_statement(const std::string& id);
PropositionResult run_proposition(const std::string& id, RotationModel m = RotationModel::Instantaneous);
std::vector<PropositionResult> run_all_propositions(RotationModel m = RotationModel::Instantaneous);
std::vector<PropositionResult> run_all_propositions_serial(RotationModel m = RotationModel::Instantaneous);

struct ConditionResult {
  std::string name;
  bool pass = false;
  int scenarios = 0;
  std::string counterexample;  // board text plus offending state
  bool informative = false;    // reported, not part of the verdict
};

struct ReasonabilityReport {
  RotationModel model = RotationModel::Instantaneous;
  std::vector<ConditionResult> conditions;
  bool pass() const {
    for (const auto& c : conditions)
      if (!c.pass && !c.informative) return false;
    return !conditions.empty();
  }
};

ReasonabilityReport check_reasonable(RotationModel m);
std::string render_report(const ReasonabilityReport& r);

}  // namespace tetris
