#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syllo/inference.hpp"
#include "syllo/kbgen.hpp"
#include "syllo/render.hpp"

namespace syllo {

enum class Experiment { Core, ShortToLong, LongToShort };
enum class Alignment { None, Aligned, Disaligned };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view s);
std::string_view to_string(Alignment a);
Alignment alignment_from_string(std::string_view s);

// Surface variants per KB: 10 word assignments x 3 premise orders.
inline constexpr int kAssignmentsPerKb = 10;
inline constexpr int kPermutationsPerKb = 3;
inline constexpr int kVariantsPerKb = kAssignmentsPerKb * kPermutationsPerKb;
inline constexpr std::size_t kStudyPairs = 3;

struct Variant {
  int assignment = 0;   // 0..9
  int permutation = 0;  // 0..2

  [[nodiscard]] int index() const { return assignment * kPermutationsPerKb + permutation; }
  static Variant from_index(int v) { return {v / kPermutationsPerKb, v % kPermutationsPerKb}; }
  friend bool operator==(const Variant&, const Variant&) = default;
  friend auto operator<=>(const Variant&, const Variant&) = default;
};

// Realizable (type, length) cells as one contiguous length range per type.
class CellMask {
 public:
  CellMask() = default;
  explicit CellMask(std::vector<LengthRange> ranges);

  // The pinned 97-cell layout: type 1 [0,12], 2 [1,10], 3 [0,19], 4 [1,13],
  // 5 [0,13], 6 [0,13], 7 [0,12].
  static CellMask standard();
  // Observed ranges of a grid, each clipped to lengths 0..19.
  static CellMask from_grid(const TypeLengthGrid& grid);

  [[nodiscard]] const std::vector<LengthRange>& ranges() const { return ranges_; }
  [[nodiscard]] std::optional<LengthRange> range(int itype) const;
  [[nodiscard]] bool contains(int itype, int length) const;
  [[nodiscard]] std::size_t cell_count() const;

  friend bool operator==(const CellMask&, const CellMask&) = default;

 private:
  std::vector<LengthRange> ranges_;
};

struct Quotas {
  int train = 1000;
  int val = 5;
  int test = 100;

  // Train quota reduced by a factor of ten.
  [[nodiscard]] Quotas limited() const { return {train / 10, val, test}; }
};

// Length windows of one experiment, derived from the mask:
//   core         train/val/test [s, m]
//   short2long   train/val [s, m-5]   test [m-4, m]
//   long2short   train/val [s+5, m]   test [s, s+4]
// where s and m are the shortest and longest realizable lengths of a type.
class SplitSpec {
 public:
  SplitSpec(Experiment experiment, CellMask mask, Quotas quotas);

  [[nodiscard]] Experiment experiment() const { return experiment_; }
  [[nodiscard]] const CellMask& mask() const { return mask_; }
  [[nodiscard]] const Quotas& quotas() const { return quotas_; }

  // Empty optional when the type has no cells in that window.
  [[nodiscard]] std::optional<IntRange> query_window(Purpose split, int itype) const;
  // Lengths study pairs may take. Train and validation use their own
  // window; test uses the test window when aligned, the train window when
  // disaligned, and the full range otherwise.
  [[nodiscard]] std::optional<IntRange> support_window(Purpose split, Alignment a, int itype) const;
  [[nodiscard]] int quota(Purpose split) const;

  // Alignments built for the test split: {None} for core, both otherwise.
  [[nodiscard]] std::vector<Alignment> test_alignments() const;

  // (type, length) cells carrying a quota in this split.
  [[nodiscard]] std::vector<std::pair<int, int>> cells(Purpose split) const;
  [[nodiscard]] std::size_t total_quota(Purpose split) const;

 private:
  Experiment experiment_;
  CellMask mask_;
  Quotas quotas_;
};

struct KbEntry {
  KnowledgeBase kb;
  std::vector<MinimalInference> inferences;  // enumerate_inferences order
};

// One query with its study pairs, all referring to inferences of one KB.
struct EpisodeSpec {
  Purpose split = Purpose::Train;
  Alignment alignment = Alignment::None;
  std::size_t kb = 0;  // index into the split's KB list
  Variant variant;
  std::size_t query = 0;
  std::array<std::size_t, kStudyPairs> study{};
  int itype = 0;
  int length = 0;
  std::string id;
};

struct CellShortfall {
  int itype = 0;
  int length = 0;
  int wanted = 0;
  int got = 0;
};

struct GroupReport {
  Purpose split = Purpose::Train;
  Alignment alignment = Alignment::None;
  std::size_t quota_total = 0;
  std::size_t emitted = 0;
  std::size_t kbs_used = 0;
  std::size_t skipped_no_support = 0;
  std::vector<CellShortfall> shortfalls;
};

struct BuildConfig {
  std::uint64_t seed = 0;
  Experiment experiment = Experiment::Core;
  bool limited = false;
  Quotas quotas;
  CellMask mask = CellMask::standard();
  // KBs generated per split before the first selection attempt, and the
  // hard cap when quotas cannot be met.
  std::size_t initial_kbs = 64;
  std::size_t max_kbs = 20000;
  // Generator settings used for every split instead of the per-split
  // defaults. The seed is still derived from `seed`.
  std::optional<GenConfig> gen;

  [[nodiscard]] SplitSpec spec() const;
  [[nodiscard]] GenConfig gen_config(Purpose p) const;
};

struct Dataset {
  BuildConfig config;
  std::array<std::vector<KbEntry>, 3> kbs;  // by Purpose
  std::array<GenReport, 3> gen_reports;
  std::vector<EpisodeSpec> train;
  std::vector<EpisodeSpec> val;
  std::map<Alignment, std::vector<EpisodeSpec>> test;
  std::vector<GroupReport> groups;

  [[nodiscard]] const std::vector<KbEntry>& kbs_for(Purpose p) const {
    return kbs[static_cast<std::size_t>(p)];
  }
  [[nodiscard]] bool complete() const;
};

// Generates KBs for each split (asking the deterministic KB streams for more
// until every cell quota is met or max_kbs is reached) and selects episodes.
// Train queries are chosen in blocks of at least four same-type pairs per
// (KB, variant), and each train query's study pairs come from its own
// block, so the union of study and query pairs is exactly the query set.
Dataset build_dataset(const BuildConfig& cfg);

// Deterministic surface form of one KB variant.
Assignment variant_assignment(const Vocabulary& vocab, const KnowledgeBase& kb,
                              std::uint64_t seed, int assignment);
std::vector<std::size_t> variant_permutation(const KnowledgeBase& kb, std::uint64_t seed,
                                             int permutation);

// Line record shared by episode and baseline files.
struct TextRecord {
  std::string id;
  std::string experiment;
  std::string split;
  std::string alignment;
  int itype = 0;
  int length = 0;
  std::string kb_id;
  Variant variant;
  std::string text;
  std::vector<std::string> gold;

  friend bool operator==(const TextRecord&, const TextRecord&) = default;
};

struct RenderOptions {
  // Seed of the word assignment and premise permutation streams; defaults
  // to the build seed.
  std::optional<std::uint64_t> surface_seed;
};

TextRecord render_episode_record(const Dataset& ds, const EpisodeSpec& ep, const Vocabulary& vocab,
                                 const RenderOptions& opts = {});
// The query alone, without the study block.
TextRecord render_baseline_record(const Dataset& ds, const EpisodeSpec& ep,
                                  const Vocabulary& vocab, const RenderOptions& opts = {});

std::vector<TextRecord> render_episodes(const Dataset& ds, const std::vector<EpisodeSpec>& eps,
                                        const Vocabulary& vocab, const RenderOptions& opts = {});
std::vector<TextRecord> render_baseline(const Dataset& ds, const std::vector<EpisodeSpec>& eps,
                                        const Vocabulary& vocab, const RenderOptions& opts = {});

// A hypothesis-premises pair as it appears in text, tied to its KB variant.
struct BaselinePair {
  std::string kb_id;
  Variant variant;
  std::string hypothesis;
  std::vector<std::string> premises;
  int itype = 0;
  int length = 0;

  friend bool operator==(const BaselinePair& a, const BaselinePair& b) {
    return a.kb_id == b.kb_id && a.variant == b.variant && a.hypothesis == b.hypothesis &&
           a.premises == b.premises;
  }
  friend auto operator<=>(const BaselinePair& a, const BaselinePair& b) {
    if (auto c = a.kb_id <=> b.kb_id; c != 0) return c;
    if (auto c = a.variant <=> b.variant; c != 0) return c;
    if (auto c = a.hypothesis <=> b.hypothesis; c != 0) return c;
    return a.premises <=> b.premises;
  }
};

// Deduplicated, sorted union of every study and query pair, read back from
// the record texts. Type and length are recomputed from the KB in the text.
// Throws InputError on malformed records.
std::vector<BaselinePair> flatten_to_baseline(const std::vector<TextRecord>& records);

// Re-renders records with fresh words from `vocab` (same structure, same
// premise order). Words are drawn per record from a stream seeded by
// (seed, record id).
std::vector<TextRecord> swap_vocabulary(const std::vector<TextRecord>& records,
                                        const Vocabulary& vocab, std::uint64_t seed);

}  // namespace syllo
