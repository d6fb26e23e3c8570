#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "tetris/analysis.hpp"
#include "tetris/textio.hpp"

namespace tetris {

namespace {

constexpr int kTestRows = 34;
constexpr int kTestBase = 6;
constexpr int kSweep = 3;

using K = LabelKind;
using Allowed = std::function<bool(const BucketLabel& initial, const BucketLabel& result)>;

struct Entry {
  std::string id;
  std::string statement;
  std::vector<PieceType> seq;
  std::vector<BucketLabel> initial;
  Allowed allowed;
};

BucketLabel L(K k, int i = 0, int j = 0, Side s = Side::None) { return BucketLabel{k, i, j, s, kTestBase}; }

std::vector<BucketLabel> both_sides(K k) { return {L(k, 0, 0, Side::Left), L(k, 0, 0, Side::Right)}; }

std::vector<BucketLabel> sweep_i(K k, Side s = Side::None) {
  std::vector<BucketLabel> out;
  for (int i = 1; i <= kSweep; ++i) out.push_back(L(k, i, 0, s));
  return out;
}

std::vector<BucketLabel> sweep_i_sides(K k) {
  auto a = sweep_i(k, Side::Left), b = sweep_i(k, Side::Right);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<BucketLabel> sweep_ij(K k, Side s = Side::None) {
  std::vector<BucketLabel> out;
  for (int i = 1; i <= kSweep; ++i)
    for (int j = i + 1; j <= kSweep; ++j) out.push_back(L(k, i, j, s));
  return out;
}

std::vector<BucketLabel> sweep_ij_sides(K k) {
  auto a = sweep_ij(k, Side::Left), b = sweep_ij(k, Side::Right);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Allowed none() {
  return [](const BucketLabel&, const BucketLabel&) { return false; };
}

Allowed one_of(std::vector<K> ks) {
  return [ks](const BucketLabel&, const BucketLabel& r) {
    return std::find(ks.begin(), ks.end(), r.kind) != ks.end();
  };
}

bool has_notch(const BucketLabel& r, int i) { return r.i == i || r.j == i; }

const std::vector<Entry>& registry() {
  using P = PieceType;
  static const std::vector<Entry> reg = [] {
    std::vector<Entry> e;
    auto add = [&](std::string id, std::string st, std::vector<P> seq, std::vector<BucketLabel> init, Allowed a) {
      e.push_back(Entry{std::move(id), std::move(st), std::move(seq), std::move(init), std::move(a)});
    };
    add("i-unprepped", "I into an unprepped bucket gives underflat or I-up", {P::I}, both_sides(K::Unprepped),
        one_of({K::Underflat, K::IUp}));
    add("lg-unprepped", "LG into an unprepped bucket gives LG-UP-i", {P::LG}, both_sides(K::Unprepped),
        one_of({K::LgPrepped}));
    add("sq-unprepped", "no valid Sq move in an unprepped bucket", {P::Sq}, both_sides(K::Unprepped), none());
    add("ls-unprepped", "no valid LS move in an unprepped bucket", {P::LS}, both_sides(K::Unprepped), none());
    add("lg-iprepped", "LG into I-up gives LG-IUP-i with i > 1", {P::LG}, {L(K::IUp)},
        [](const BucketLabel&, const BucketLabel& r) { return r.kind == K::IPreppedLg && r.i >= 2; });
    add("sq-iprepped", "no valid Sq move in I-up", {P::Sq}, {L(K::IUp)}, none());
    add("sq-iprepped-notched", "no valid Sq move in LG-IUP-i", {P::Sq}, sweep_i(K::IPreppedLg), none());
    add("sq-notched", "no valid Sq move in LG-UP-i", {P::Sq}, sweep_i_sides(K::LgPrepped), none());
    add("ls-notched", "no valid LS move in LG-UP-i", {P::LS}, sweep_i_sides(K::LgPrepped), none());
    add("lg-notched", "LG into LG-UP-i gives short-plateau or LG-LG-UP-i-j", {P::LG}, sweep_i_sides(K::LgPrepped),
        [](const BucketLabel& in, const BucketLabel& r) {
          return r.kind == K::ShortPlateau || (r.kind == K::LgPreppedLg && has_notch(r, in.i));
        });
    add("sq-notched-two", "no valid Sq move in LG-LG-UP-i-j", {P::Sq}, sweep_ij_sides(K::LgPreppedLg), none());
    add("splat-tplat", "Sq into short-plateau gives tall-plateau", {P::Sq}, {L(K::ShortPlateau)},
        one_of({K::TallPlateau}));
    add("ls-rplat", "no valid LS move in tall-plateau", {P::LS}, {L(K::TallPlateau)}, none());
    add("sq-rplat", "no valid Sq move in tall-plateau", {P::Sq}, {L(K::TallPlateau)}, none());
    add("lg-rplat", "LG into tall-plateau gives LG-TP-i", {P::LG}, {L(K::TallPlateau)}, one_of({K::LgTplat}));
    add("ls-rplat-notched", "no valid LS move in LG-TP-i", {P::LS}, sweep_i(K::LgTplat), none());
    add("lg-underflat", "LG into underflat gives LG-UF-i", {P::LG}, {L(K::Underflat)}, one_of({K::LgUnderflat}));
    add("sq-underflat", "no valid Sq move in underflat", {P::Sq}, {L(K::Underflat)}, none());
    add("ls-underflat", "no valid LS move in underflat", {P::LS}, {L(K::Underflat)}, none());
    add("sq-ufnotched", "Sq into LG-UF-i is valid only for i = 1 and gives overflat", {P::Sq},
        sweep_i(K::LgUnderflat),
        [](const BucketLabel& in, const BucketLabel& r) { return in.i == 1 && r.kind == K::Overflat; });
    add("lg-overflat", "LG into overflat gives LG-OF-1, LG-OF-2, LG-OF-3 or LG-OF-D-i", {P::LG}, {L(K::Overflat)},
        one_of({K::LgOf1, K::LgOf2, K::LgOf3, K::LgOfD}));
    add("ls-overflat", "no valid LS move in overflat", {P::LS}, {L(K::Overflat)}, none());
    add("sqsq-overflat", "two Sq into overflat give unprepped", {P::Sq, P::Sq}, {L(K::Overflat)},
        one_of({K::Unprepped}));
    add("ls-over-1", "no valid LS move in LG-OF-1", {P::LS}, {L(K::LgOf1)}, none());
    add("ls-over-2", "no valid LS move in LG-OF-2", {P::LS}, {L(K::LgOf2)}, none());
    add("ls-over-3", "LS into LG-OF-3 gives trigger-happy", {P::LS}, {L(K::LgOf3)}, one_of({K::TriggerHappy}));
    add("ls-over-4", "no valid LS move in LG-OF-D-i", {P::LS}, sweep_i(K::LgOfD), none());
    add("sq-thappy", "no valid Sq move in trigger-happy", {P::Sq}, {L(K::TriggerHappy)}, none());
    add("lg-thappy", "LG into trigger-happy gives LG-TH-i or underflat", {P::LG}, {L(K::TriggerHappy)},
        one_of({K::LgThappy, K::Underflat}));
    add("ls-thappy", "no valid LS move in trigger-happy", {P::LS}, {L(K::TriggerHappy)}, none());
    add("sq-thappy-notched", "no valid Sq move in LG-TH-i", {P::Sq}, sweep_i(K::LgThappy), none());
    add("ls-thappy-notched", "no valid LS move in LG-TH-i", {P::LS}, sweep_i(K::LgThappy), none());
    add("lg-thappy-notched", "LG into LG-TH-i gives LG-UF-i or LG-LG-TH-i-j", {P::LG}, sweep_i(K::LgThappy),
        [](const BucketLabel& in, const BucketLabel& r) {
          return (r.kind == K::LgUnderflat && r.i == in.i) || (r.kind == K::LgLgThappy && has_notch(r, in.i));
        });
    add("sq-thappy-notched-two", "no valid Sq move in LG-LG-TH-i-j", {P::Sq}, sweep_ij(K::LgLgThappy), none());
    // Whole sequences played into one bucket.
    add("seq-initiator", "<I, LG, Sq> into an unprepped bucket ends overflat", {P::I, P::LG, P::Sq},
        {L(K::Unprepped, 0, 0, Side::Right)}, one_of({K::Overflat}));
    add("seq-overflat-lg-ls", "<LG, LS> into overflat ends trigger-happy", {P::LG, P::LS}, {L(K::Overflat)},
        one_of({K::TriggerHappy}));
    add("seq-thappy-lg-lg-sq", "<LG, LG, Sq> into trigger-happy ends overflat", {P::LG, P::LG, P::Sq},
        {L(K::TriggerHappy)}, one_of({K::Overflat}));
    add("seq-filler", "<LG, LS, LG, LG, Sq> into overflat ends overflat", {P::LG, P::LS, P::LG, P::LG, P::Sq},
        {L(K::Overflat)}, one_of({K::Overflat}));
    add("seq-terminator", "<Sq, Sq> into overflat ends unprepped", {P::Sq, P::Sq}, {L(K::Overflat)},
        one_of({K::Unprepped}));
    return e;
  }();
  return reg;
}

const Entry& find_entry(const std::string& id) {
  for (const Entry& e : registry())
    if (e.id == id) return e;
  throw std::out_of_range("unknown proposition " + id);
}

std::string describe(const BucketRegion& r, const PieceState& s) {
  return render_board(r.cells) + "last piece " + std::string(piece_name(s.type)) + " orient " +
         std::to_string(s.orient) + " at (" + std::to_string(s.row) + "," + std::to_string(s.col - kLocalPad) +
         ")\n";
}

}  // namespace

std::vector<std::string> proposition_ids() {
  std::vector<std::string> out;
  for (const Entry& e : registry()) out.push_back(e.id);
  return out;
}

std::string proposition_statement(const std::string& id) { return find_entry(id).statement; }

namespace {

// Plays the sequence from every initial configuration. visit sees each
// placement; unflagged results of non-final steps are played on.
template <class Visit>
void walk(const Entry& e, RotationModel m, PropositionResult& res, Visit visit) {
  for (const BucketLabel& init : e.initial) {
    auto start = template_region(init, kTestRows);
    if (!start) throw std::logic_error("template " + label_name(init) + " does not fit the test bucket");
    res.initial_configs += 1;
    const BucketLabel seen = classify_bucket(*start);
    if (!(seen == init)) {
      res.failures.push_back("initial " + label_name(init) + " classified as " + label_name(seen));
      continue;
    }
    std::vector<BucketRegion> frontier{*start};
    for (std::size_t step = 0; step < e.seq.size(); ++step) {
      std::vector<BucketRegion> next;
      std::set<std::vector<std::uint8_t>> dedupe;
      for (const BucketRegion& cur : frontier) {
        for (FixedPlacement& p : enumerate_fixed_placements(cur, e.seq[step], m)) {
          res.placements += 1;
          CorpusEntry c{init, step, std::move(p), {}, {}};
          c.flags = detect_unfillable(c.placement.result);
          const bool bad = c.placement.outside || !c.flags.empty();
          if (!bad) c.label = classify_bucket(c.placement.result);
          if (!bad && step + 1 < e.seq.size() && dedupe.insert(c.placement.result.cells.raw()).second)
            next.push_back(c.placement.result);
          visit(c, bad, step + 1 == e.seq.size());
        }
      }
      frontier = std::move(next);
    }
  }
}

}  // namespace

PropositionResult run_proposition(const std::string& id, RotationModel m) {
  const Entry& e = find_entry(id);
  PropositionResult res;
  res.id = id;
  walk(e, m, res, [&](const CorpusEntry& c, bool bad, bool last) {
    if (bad) {
      res.flagged += 1;
      return;
    }
    if (!last) return;
    if (c.label.kind != LabelKind::Unknown && e.allowed(c.initial, c.label)) {
      res.matched += 1;
    } else {
      res.failures.push_back("from " + label_name(c.initial) + ": unflagged result " + label_name(c.label) + "\n" +
                             describe(c.placement.result, c.placement.state));
    }
  });
  res.pass = res.failures.empty();
  return res;
}

std::vector<CorpusEntry> proposition_corpus(const std::string& id, RotationModel m) {
  PropositionResult res;
  std::vector<CorpusEntry> out;
  walk(find_entry(id), m, res, [&](const CorpusEntry& c, bool, bool) { out.push_back(c); });
  return out;
}

std::vector<PropositionResult> run_all_propositions(RotationModel m) {
  const auto ids = proposition_ids();
  std::vector<PropositionResult> out(ids.size());
  std::vector<std::string> errors(ids.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < ids.size(); ++k) {
    try {
      out[k] = run_proposition(ids[k], m);
    } catch (const std::exception& ex) {
      errors[k] = ex.what();
    }
  }
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (!errors[k].empty()) throw std::runtime_error("proposition " + ids[k] + ": " + errors[k]);
  return out;
}

std::vector<PropositionResult> run_all_propositions_serial(RotationModel m) {
  std::vector<PropositionResult> out;
  for (const std::string& id : proposition_ids()) out.push_back(run_proposition(id, m));
  return out;
}

}  // namespace tetris
