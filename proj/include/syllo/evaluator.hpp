#pragma once

#include <map>
#include <string>
#include <vector>

#include "syllo/episodes.hpp"
#include "syllo/formula.hpp"

namespace syllo {

struct PredictionRecord {
  std::string episode_id;
  std::string raw_text;
};

// Gold side of one record, read back from its text.
struct GoldItem {
  std::string id;
  int itype = 0;
  int length = 0;
  std::vector<Formula> kb;    // rendered order
  std::vector<Formula> gold;  // query premises
  Lexicon lex;
};

// Throws InputError when the text cannot be parsed or the gold strings
// disagree with the query block.
GoldItem read_gold(const TextRecord& r);

enum class Outcome { Correct, Nvm, Map, Residual };

std::string_view to_string(Outcome o);

struct Score {
  Outcome outcome = Outcome::Correct;
  bool hp = false;  // some item unparseable, unknown, or not a KB premise
  int extra_count = 0;      // |P \ gold| when NVM
  int missing_a_count = 0;  // |gold_A \ P| when MAP
  int hallucinated = 0;     // items counted for HP
};

// Items are split on commas and matched as formulas (case-insensitive, E and
// I in either orientation). P is the set of predicted KB premises. Correct
// needs every item to be a KB premise and P == gold; otherwise NVM if
// gold is a proper subset of P, MAP if a gold A premise is missing from P,
// and residual else. HP is tracked independently of that partition.
Score score(const GoldItem& gold, std::string_view raw_text);

struct CellStats {
  std::size_t total = 0;
  std::size_t correct = 0;
};

// Mergeable counts; the report is derived from it.
struct MetricsAccumulator {
  std::map<std::pair<int, int>, CellStats> cells;
  std::size_t nvm = 0, map = 0, residual = 0, hp = 0;
  std::size_t nvm_extra_sum = 0, map_missing_sum = 0;

  void add(int itype, int length, const Score& s);
  MetricsAccumulator& operator+=(const MetricsAccumulator& o);
};

enum class LengthGroup { None, Short, Long };

struct CellReport {
  int itype = 0;
  int length = 0;
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0;
  LengthGroup group = LengthGroup::None;
};

// Percentages in [0, 100]. Error-type percentages use the number of
// errors as denominator and are 0 when there are no errors.
struct MetricsReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t error_count = 0;
  double accuracy_all = 0;
  double accuracy_short = 0;
  double accuracy_long = 0;
  std::size_t short_total = 0;
  std::size_t long_total = 0;
  std::size_t nvm_count = 0;
  double nvm_pct = 0;
  double avg_nvm = 0;  // mean extra premises over NVM errors
  std::size_t map_count = 0;
  double map_pct = 0;
  double avg_map = 0;  // mean missing A premises over MAP errors
  std::size_t hp_count = 0;
  double hp_pct = 0;
  std::size_t residual_count = 0;
  double residual_pct = 0;
  std::vector<CellReport> cells;  // sorted by (type, length)
};

// Short and Long are the five shortest and five longest lengths of each
// type. Lengths come from `mask` when given, else from the records seen.
// With fewer than ten lengths, Short takes precedence and Long gets the
// rest, so no cell is in both.
MetricsReport make_report(const MetricsAccumulator& acc, const CellMask* mask = nullptr);

struct ScoredRecord {
  std::string episode_id;
  int itype = 0;
  int length = 0;
  Score score;
};

struct Evaluation {
  MetricsReport report;
  std::vector<ScoredRecord> scored;  // prediction order
  std::size_t unpredicted = 0;       // gold records without a prediction
};

// Scores every prediction against the gold record with the same id. Throws
// InputError on an unknown or repeated episode id. Gold records without a
// prediction are counted in `unpredicted` only.
Evaluation evaluate(const std::vector<TextRecord>& gold, const std::vector<PredictionRecord>& preds,
                    const CellMask* mask = nullptr);

// Human-readable differences: rates further apart than `tolerance`
// (percentage points, or premises for the averages), differing record
// totals, and cells missing on either side. Empty when the reports agree.
std::vector<std::string> compare_reports(const MetricsReport& a, const MetricsReport& b,
                                         double tolerance = 0.0);

struct MeanStd {
  double mean = 0;
  double std = 0;  // sample standard deviation, 0 for a single value
};

// Mean and standard deviation of the headline rates over several runs.
std::map<std::string, MeanStd> summarize_reports(const std::vector<MetricsReport>& reports);

}  // namespace syllo
