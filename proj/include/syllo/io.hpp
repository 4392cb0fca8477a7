#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "syllo/episodes.hpp"
#include "syllo/evaluator.hpp"
#include "syllo/inference.hpp"
#include "syllo/kbgen.hpp"

namespace syllo {

// Field order is insertion order, so dumps are stable and diffable.
using Json = nlohmann::ordered_json;

// One JSON value per line. Blank lines are skipped; a malformed line throws
// InputError naming the file and line.
std::vector<Json> read_jsonl(const std::string& path);
std::vector<Json> read_jsonl(std::istream& in, const std::string& name);
// LF-terminated, compact. Throws InputError when the file cannot be written.
void write_jsonl(const std::string& path, const std::vector<Json>& rows);
void write_jsonl(std::ostream& out, const std::vector<Json>& rows);
// A single JSON document (pretty printed).
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& value);

// Premises are written over terms x1..xn: term id k is "x{k+1}".
Json kb_to_json(const KnowledgeBase& kb);
KnowledgeBase kb_from_json(const Json& j);

Json inference_to_json(const KnowledgeBase& kb, const MinimalInference& inf);

Json text_record_to_json(const TextRecord& r);
TextRecord text_record_from_json(const Json& j);

Json prediction_to_json(const PredictionRecord& p);
PredictionRecord prediction_from_json(const Json& j);

Json baseline_pair_to_json(const BaselinePair& p);

Json gen_report_to_json(const GenReport& r);
Json grid_to_json(const TypeLengthGrid& g);
Json mask_to_json(const CellMask& m);
Json group_report_to_json(const GroupReport& g);

Json metrics_to_json(const MetricsReport& r);
Json scored_to_json(const ScoredRecord& s);

// Aligned 7 x 20 text table of counts, one row per type, plus overflow.
std::string grid_table(const TypeLengthGrid& g);

}  // namespace syllo
