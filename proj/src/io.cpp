#include "syllo/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "syllo/errors.hpp"
#include "syllo/render.hpp"

namespace syllo {

std::vector<Json> read_jsonl(std::istream& in, const std::string& name) {
  std::vector<Json> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::exception& e) {
      throw InputError(name + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_jsonl(in, path);
}

void write_jsonl(std::ostream& out, const std::vector<Json>& rows) {
  for (const auto& r : rows) out << r.dump() << '\n';
}

void write_jsonl(const std::string& path, const std::vector<Json>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_jsonl(out, rows);
  if (!out) throw InputError("write failed for " + path);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << value.dump(2) << '\n';
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

Json variant_to_json(const Variant& v) {
  return Json{{"assignment", v.assignment}, {"permutation", v.permutation}};
}

}  // namespace

Json kb_to_json(const KnowledgeBase& kb) {
  const auto asg = indexed_assignment(kb.n_terms());
  Json prem = Json::array();
  for (const auto& f : kb.premises()) prem.push_back(render_formula(f, asg));
  return Json{{"id", kb.id()}, {"n_terms", kb.n_terms()}, {"premises", prem}};
}

KnowledgeBase kb_from_json(const Json& j) {
  const auto id = field<std::string>(j, "id");
  const auto n = field<std::size_t>(j, "n_terms");
  const auto lines = field<std::vector<std::string>>(j, "premises");
  const Lexicon lex(indexed_assignment(n));
  std::vector<Formula> prem;
  for (const auto& l : lines) {
    auto f = parse_formula(l, lex);
    if (!f) throw InputError("knowledge base " + id + ": cannot read premise '" + l + "'");
    prem.push_back(*f);
  }
  return KnowledgeBase(id, n, std::move(prem));
}

Json inference_to_json(const KnowledgeBase& kb, const MinimalInference& inf) {
  const auto asg = indexed_assignment(kb.n_terms());
  Json prem = Json::array();
  Json idx = Json::array();
  for (auto i : inf.premises.indices()) {
    prem.push_back(render_formula(kb[i], asg));
    idx.push_back(i);
  }
  return Json{{"kb_id", kb.id()},
              {"hypothesis", render_formula(inf.conclusion, asg)},
              {"itype", inf.itype},
              {"length", inf.length},
              {"premises", prem},
              {"premise_indices", idx}};
}

Json text_record_to_json(const TextRecord& r) {
  return Json{{"id", r.id},         {"experiment", r.experiment}, {"split", r.split},
              {"alignment", r.alignment}, {"itype", r.itype},   {"length", r.length},
              {"kb_id", r.kb_id},   {"variant", variant_to_json(r.variant)},
              {"text", r.text},     {"gold", r.gold}};
}

TextRecord text_record_from_json(const Json& j) {
  TextRecord r;
  r.id = field<std::string>(j, "id");
  r.experiment = field<std::string>(j, "experiment");
  r.split = field<std::string>(j, "split");
  r.alignment = field<std::string>(j, "alignment");
  r.itype = field<int>(j, "itype");
  r.length = field<int>(j, "length");
  r.kb_id = field<std::string>(j, "kb_id");
  const auto v = field<Json>(j, "variant");
  r.variant = {field<int>(v, "assignment"), field<int>(v, "permutation")};
  r.text = field<std::string>(j, "text");
  r.gold = field<std::vector<std::string>>(j, "gold");
  return r;
}

Json prediction_to_json(const PredictionRecord& p) {
  return Json{{"episode_id", p.episode_id}, {"raw_text", p.raw_text}};
}

PredictionRecord prediction_from_json(const Json& j) {
  return {field<std::string>(j, "episode_id"), field<std::string>(j, "raw_text")};
}

Json baseline_pair_to_json(const BaselinePair& p) {
  return Json{{"kb_id", p.kb_id},   {"variant", variant_to_json(p.variant)},
              {"hypothesis", p.hypothesis}, {"premises", p.premises},
              {"itype", p.itype},   {"length", p.length}};
}

Json gen_report_to_json(const GenReport& r) {
  Json hist = Json::object();
  for (const auto& [k, v] : r.premise_histogram) hist[std::to_string(k)] = v;
  return Json{{"attempts", r.attempts},
              {"emitted", r.emitted},
              {"rejected_consistency", r.rejected_consistency},
              {"rejected_redundancy", r.rejected_redundancy},
              {"rejected_quota", r.rejected_quota},
              {"premise_histogram", hist}};
}

Json grid_to_json(const TypeLengthGrid& g) {
  Json rows = Json::array();
  for (int t = 1; t <= kNumTypes; ++t) {
    Json counts = Json::array();
    for (int len = 0; len <= kMaxGridLength; ++len) counts.push_back(g.at(t, len));
    rows.push_back(Json{{"itype", t}, {"counts", counts}, {"overflow", g.overflow(t)}});
  }
  Json ranges = Json::array();
  for (const auto& r : g.length_ranges())
    ranges.push_back(Json{{"itype", r.itype}, {"min", r.min_len}, {"max", r.max_len}});
  return Json{{"total", g.total()}, {"rows", rows}, {"observed_ranges", ranges}};
}

Json mask_to_json(const CellMask& m) {
  Json out = Json::array();
  for (const auto& r : m.ranges())
    out.push_back(Json{{"itype", r.itype}, {"min", r.min_len}, {"max", r.max_len}});
  return out;
}

Json group_report_to_json(const GroupReport& g) {
  Json sf = Json::array();
  for (const auto& s : g.shortfalls)
    sf.push_back(Json{{"itype", s.itype}, {"length", s.length}, {"wanted", s.wanted}, {"got", s.got}});
  return Json{{"split", std::string(to_string(g.split))},
              {"alignment", std::string(to_string(g.alignment))},
              {"quota_total", g.quota_total},
              {"emitted", g.emitted},
              {"kbs_used", g.kbs_used},
              {"skipped_no_support", g.skipped_no_support},
              {"shortfalls", sf}};
}

namespace {

std::string group_name(LengthGroup g) {
  switch (g) {
    case LengthGroup::Short: return "short";
    case LengthGroup::Long: return "long";
    case LengthGroup::None: return "none";
  }
  return "none";
}

}  // namespace

Json metrics_to_json(const MetricsReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back(Json{{"itype", c.itype},   {"length", c.length},     {"total", c.total},
                         {"correct", c.correct}, {"accuracy", c.accuracy}, {"group", group_name(c.group)}});
  return Json{{"total", r.total},
              {"correct", r.correct},
              {"error_count", r.error_count},
              {"accuracy_all", r.accuracy_all},
              {"accuracy_short", r.accuracy_short},
              {"accuracy_long", r.accuracy_long},
              {"short_total", r.short_total},
              {"long_total", r.long_total},
              {"nvm_count", r.nvm_count},
              {"nvm_pct", r.nvm_pct},
              {"avg_nvm", r.avg_nvm},
              {"map_count", r.map_count},
              {"map_pct", r.map_pct},
              {"avg_map", r.avg_map},
              {"hp_count", r.hp_count},
              {"hp_pct", r.hp_pct},
              {"residual_count", r.residual_count},
              {"residual_pct", r.residual_pct},
              {"cells", cells},
              {"meta",
               Json{{"error_pct_denominator", "errors"},
                    {"map_counts", "missing A premises only"},
                    {"hp_in_nvm_average", false}}}};
}

Json scored_to_json(const ScoredRecord& s) {
  return Json{{"episode_id", s.episode_id},
              {"itype", s.itype},
              {"length", s.length},
              {"outcome", std::string(to_string(s.score.outcome))},
              {"nvm", s.score.outcome == Outcome::Nvm},
              {"map", s.score.outcome == Outcome::Map},
              {"hp", s.score.hp},
              {"extra_count", s.score.extra_count},
              {"missing_a_count", s.score.missing_a_count}};
}

std::string grid_table(const TypeLengthGrid& g) {
  std::ostringstream out;
  out << "type";
  for (int len = 0; len <= kMaxGridLength; ++len) out << std::setw(7) << len;
  out << std::setw(7) << ">19" << '\n';
  for (int t = 1; t <= kNumTypes; ++t) {
    out << std::setw(4) << t;
    for (int len = 0; len <= kMaxGridLength; ++len) out << std::setw(7) << g.at(t, len);
    out << std::setw(7) << g.overflow(t) << '\n';
  }
  return out.str();
}

}  // namespace syllo
