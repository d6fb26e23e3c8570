#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tetris/board.hpp"
#include "tetris/piece.hpp"

namespace tetris {

struct Instance {
  int s = 0;
  long long T = 0;
  std::vector<long long> a;
  friend bool operator==(const Instance&, const Instance&) = default;
};

// "s T" on the first line, the 3s numbers on the second.
Instance parse_instance(const std::string& text);
std::string render_instance(const Instance& inst);

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Multiplies every number and T by 4s.
Instance normalize(const Instance& inst);

struct ValidationReport {
  bool sum_ok = false;
  bool bounds_ok = false;
  bool triples_only = false;  // every subset summing to T has three members
  bool t_even = false;
  bool gap_ok = false;        // other subset sums miss T by at least 3s
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Subset properties are checked exhaustively; at most this many numbers.
inline constexpr int kMaxValidateNumbers = 24;
ValidationReport validate_instance(const Instance& inst);

struct GameMeta {
  int s = 0;
  long long T = 0;
  int staging_rows = 0;
  int bucket_count = 0;
  int lock_first_col = 0;  // first of the three lock columns
  int lock_cols = 3;
  int payload_rows = 0;    // 6T+22
  int payload_bottom = 1;  // board row holding payload row 1
  bool mirrored = false;
  std::string variant = "base";
  // reservoir constructions
  long long reservoir_rows = 0;
  std::string area_above;      // A, as a decimal string (may be huge)
  std::string reservoir_area;  // R
  long long filled_above = 0;  // F
  long long piece_area = 0;    // P
  long long rows_above = 0;    // a
  bool materialized = true;
  std::string note;
};

struct GeneratedGame {
  Board board;
  std::vector<PieceType> pieces;
  GameMeta meta;
};

inline int default_staging(int s) { return 3 * s + 8; }

std::vector<PieceType> reduction_pieces(const Instance& inst);
long long expected_piece_count(int s, long long T);

// staging_rows < 0 selects the default.
GeneratedGame build_game(const Instance& inst, int staging_rows = -1);

struct AuditLine {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct AuditReport {
  std::vector<AuditLine> lines;
  bool ok() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return !lines.empty();
  }
};

AuditReport counting_audit(const GeneratedGame& g);

enum class VariantKind { Tetrises, Survival, InapproxPieces, InapproxRows, InapproxHeight };

struct Rational {
  long long num = 1;
  long long den = 2;
};

std::optional<Rational> parse_rational(const std::string& s);
std::optional<VariantKind> parse_variant(const std::string& s);
std::string variant_name(VariantKind k);

struct VariantSpec {
  VariantKind kind = VariantKind::Tetrises;
  std::optional<Rational> epsilon;
};

// Boards above this many cells are described but not built.
inline constexpr long long kDefaultCellCap = 20'000'000;

GeneratedGame build_variant(const Instance& inst, const VariantSpec& spec, int staging_rows = -1,
                            long long cell_cap = kDefaultCellCap);

// Checks the inequalities that drive the reservoir size.
AuditReport variant_audit(const GeneratedGame& g, const VariantSpec& spec);

GeneratedGame mirror_game(const GeneratedGame& g);

// Bucket j (1-based) occupies board columns first..first+5.
int bucket_first_col(const GameMeta& m, int j);

// Board row of payload row r.
inline int payload_to_board_row(const GameMeta& m, int r) { return m.payload_bottom + r - 1; }

}  // namespace tetris
