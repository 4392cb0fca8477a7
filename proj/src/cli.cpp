#include "syllo/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "syllo/episodes.hpp"
#include "syllo/errors.hpp"
#include "syllo/evaluator.hpp"
#include "syllo/inference.hpp"
#include "syllo/io.hpp"
#include "syllo/kbgen.hpp"
#include "syllo/logic.hpp"
#include "syllo/oracle.hpp"
#include "syllo/render.hpp"

namespace syllo {

namespace {

namespace fs = std::filesystem;

// The meta-learning runs see each pair four times per epoch (once as a query
// and in up to three study blocks), so they train for a quarter of the
// baseline's epochs.
constexpr int kBaselineEpochs = 4;
constexpr int kMetaEpochs = 1;

struct Common {
  std::string report;
};

// Parallelism requested through SYLLO_THREADS. Work is done on one thread;
// the value is validated and recorded.
Json threads_info() {
  Json j{{"requested", nullptr}, {"used", 1}};
  if (const char* v = std::getenv("SYLLO_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1) throw InputError("SYLLO_THREADS must be a positive integer");
    j["requested"] = n;
  }
  return j;
}

Json report_head(const std::string& sub) {
  return Json{{"subcommand", sub}, {"format_version", std::string(kFormatVersion)}, {"threads", threads_info()}};
}

void finish_report(const Common& c, const Json& report) {
  if (!c.report.empty()) write_json(c.report, report);
}

void emit_rows(const std::string& path, const std::vector<Json>& rows, std::ostream& out) {
  if (path.empty() || path == "-") write_jsonl(out, rows);
  else write_jsonl(path, rows);
}

Vocabulary make_vocab(const std::string& kind, const std::string& file, std::uint64_t seed,
                      const Vocabulary* exclude) {
  switch (vocab_kind_from_string(kind)) {
    case VocabKind::Syllable:
      return syllable_vocabulary(derive_seed(seed, "vocab"), 5000, builtin_syllables(), exclude);
    case VocabKind::Symbolic: return symbolic_vocabulary();
    case VocabKind::External:
      if (file.empty()) throw InputError("--vocab-kind external needs --vocab-file");
      return external_vocabulary(file);
  }
  throw InputError("unknown vocabulary kind");
}

Vocabulary build_vocab(std::uint64_t seed) {
  return syllable_vocabulary(derive_seed(seed, "vocab"));
}

std::vector<KnowledgeBase> read_kbs(const std::string& path) {
  std::vector<KnowledgeBase> out;
  for (const auto& j : read_jsonl(path)) out.push_back(kb_from_json(j));
  return out;
}

std::vector<TextRecord> read_records(const std::string& path) {
  std::vector<TextRecord> out;
  std::size_t line = 0;
  for (const auto& j : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(text_record_from_json(j));
    } catch (const InputError& e) {
      throw InputError(path + ": record " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Json> to_rows(const std::vector<TextRecord>& recs) {
  std::vector<Json> rows;
  rows.reserve(recs.size());
  for (const auto& r : recs) rows.push_back(text_record_to_json(r));
  return rows;
}

// ---- subcommands ----

struct GenArgs {
  std::size_t count = 0;
  std::string purpose = "train";
  std::uint64_t seed = 0;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out) {
  BuildConfig bc;
  bc.seed = a.seed;
  const Purpose p = purpose_from_string(a.purpose);
  GenReport rep;
  const auto kbs = gen_kbs(bc.gen_config(p), a.count, p, &rep);
  std::vector<Json> rows;
  for (const auto& kb : kbs) rows.push_back(kb_to_json(kb));
  emit_rows(a.out, rows, out);
  Json r = report_head("gen-kbs");
  r["seed"] = a.seed;
  r["purpose"] = a.purpose;
  r["count"] = kbs.size();
  r["generation"] = gen_report_to_json(rep);
  finish_report(c, r);
  return kExitOk;
}

struct EnumArgs {
  std::string kbs;
  std::string out = "-";
};

int cmd_enum(const EnumArgs& a, const Common& c, std::ostream& out) {
  TypeLengthGrid grid;
  std::vector<Json> rows;
  const auto kbs = read_kbs(a.kbs);
  for (const auto& kb : kbs)
    for (const auto& inf : enumerate_inferences(kb)) {
      rows.push_back(inference_to_json(kb, inf));
      grid.add(inf);
    }
  emit_rows(a.out, rows, out);
  Json r = report_head("enum");
  r["kbs"] = kbs.size();
  r["inferences"] = rows.size();
  r["grid"] = grid_to_json(grid);
  finish_report(c, r);
  return kExitOk;
}

struct StatsArgs {
  std::string kbs;
  std::size_t count = 0;
  std::string purpose = "train";
  std::optional<std::uint64_t> seed;
  bool json = false;
};

int cmd_stats(const StatsArgs& a, const Common& c, std::ostream& out) {
  std::vector<KnowledgeBase> kbs;
  if (!a.kbs.empty()) {
    kbs = read_kbs(a.kbs);
  } else {
    if (!a.seed || a.count == 0) throw InputError("stats needs --kbs, or --count with --seed");
    BuildConfig bc;
    bc.seed = *a.seed;
    const Purpose p = purpose_from_string(a.purpose);
    kbs = gen_kbs(bc.gen_config(p), a.count, p);
  }
  TypeLengthGrid grid;
  std::map<std::size_t, std::size_t> sizes;
  for (const auto& kb : kbs) {
    grid.add_kb(kb);
    ++sizes[kb.size()];
  }
  Json r = report_head("stats");
  if (a.seed) r["seed"] = *a.seed;
  r["kbs"] = kbs.size();
  r["grid"] = grid_to_json(grid);
  if (a.json) {
    out << r.dump(2) << '\n';
  } else {
    out << "knowledge bases: " << kbs.size() << "\n"
        << "premises: " << sizes.begin()->first << ".." << sizes.rbegin()->first << "\n"
        << "inferences: " << grid.total() << "\n\n"
        << grid_table(grid) << "\nobserved length ranges:\n";
    for (const auto& lr : grid.length_ranges())
      out << "  type " << lr.itype << ": [" << lr.min_len << ", " << lr.max_len << "]\n";
  }
  finish_report(c, r);
  return kExitOk;
}

struct BuildArgs {
  std::string experiment = "core";
  std::uint64_t seed = 0;
  bool limited = false;
  std::string out_dir;
  std::string vocab_kind = "syllable";
  std::string vocab_file;
  std::optional<int> quota_train, quota_val, quota_test;
  std::size_t initial_kbs = 64;
  std::size_t max_kbs = 20000;
};

std::string file_stem(Purpose p, Alignment a) {
  std::string s(to_string(p));
  if (a != Alignment::None) s += "-" + std::string(to_string(a));
  return s;
}

int cmd_build(const BuildArgs& a, const Common& c, std::ostream& out) {
  BuildConfig cfg;
  cfg.seed = a.seed;
  cfg.experiment = experiment_from_string(a.experiment);
  cfg.limited = a.limited;
  if (a.quota_train) cfg.quotas.train = *a.quota_train;
  if (a.quota_val) cfg.quotas.val = *a.quota_val;
  if (a.quota_test) cfg.quotas.test = *a.quota_test;
  cfg.initial_kbs = a.initial_kbs;
  cfg.max_kbs = a.max_kbs;
  const Vocabulary vocab = make_vocab(a.vocab_kind, a.vocab_file, a.seed, nullptr);

  const Dataset ds = build_dataset(cfg);
  fs::create_directories(a.out_dir);
  Json files = Json::array();
  auto write = [&](const std::string& name, const std::vector<Json>& rows) {
    write_jsonl((fs::path(a.out_dir) / name).string(), rows);
    files.push_back(Json{{"name", name}, {"records", rows.size()}});
  };

  for (Purpose p : {Purpose::Train, Purpose::Val, Purpose::Test}) {
    std::vector<Json> rows;
    for (const auto& e : ds.kbs_for(p)) rows.push_back(kb_to_json(e.kb));
    write("kbs-" + std::string(to_string(p)) + ".jsonl", rows);
  }

  std::vector<std::pair<std::string, const std::vector<EpisodeSpec>*>> groups = {
      {file_stem(Purpose::Train, Alignment::None), &ds.train},
      {file_stem(Purpose::Val, Alignment::None), &ds.val}};
  for (const auto& [al, eps] : ds.test) groups.emplace_back(file_stem(Purpose::Test, al), &eps);

  Json d_eq;
  for (const auto& [stem, eps] : groups) {
    const auto episodes = render_episodes(ds, *eps, vocab);
    const auto baseline = render_baseline(ds, *eps, vocab);
    write("episodes-" + stem + ".jsonl", to_rows(episodes));
    write("baseline-" + stem + ".jsonl", to_rows(baseline));
    if (eps == &ds.train) {
      const auto flat = flatten_to_baseline(episodes);
      const auto base = flatten_to_baseline(baseline);
      d_eq = Json{{"episode_pairs", flat.size()}, {"baseline_pairs", base.size()}, {"holds", flat == base}};
    }
  }

  Json r = report_head("build-dataset");
  r["seed"] = a.seed;
  r["experiment"] = a.experiment;
  r["limited"] = a.limited;
  const SplitSpec spec = cfg.spec();
  r["quotas"] = Json{{"train", spec.quotas().train}, {"val", spec.quotas().val}, {"test", spec.quotas().test}};
  r["mask"] = mask_to_json(cfg.mask);
  r["vocabulary"] = Json{{"kind", a.vocab_kind}, {"size", vocab.size()}};
  Json groups_json = Json::array();
  for (const auto& g : ds.groups) groups_json.push_back(group_report_to_json(g));
  r["groups"] = groups_json;
  Json gen = Json::object();
  for (Purpose p : {Purpose::Train, Purpose::Val, Purpose::Test}) {
    Json g = gen_report_to_json(ds.gen_reports[static_cast<std::size_t>(p)]);
    g["kbs"] = ds.kbs_for(p).size();
    gen[std::string(to_string(p))] = g;
  }
  r["generation"] = gen;
  r["d_equality"] = d_eq;
  r["training_epochs"] = Json{{"baseline", kBaselineEpochs}, {"meta", kMetaEpochs}};
  r["complete"] = ds.complete();
  r["files"] = files;
  write_json((fs::path(a.out_dir) / "report.json").string(), r);
  finish_report(c, r);

  out << "episodes: train " << ds.train.size() << ", val " << ds.val.size();
  for (const auto& [al, eps] : ds.test) out << ", " << file_stem(Purpose::Test, al) << " " << eps.size();
  out << "\n";
  if (!d_eq.value("holds", false)) {
    out << "flattened train episodes differ from the baseline pairs\n";
    return kExitPartial;
  }
  if (!ds.complete()) {
    for (const auto& g : ds.groups)
      for (const auto& s : g.shortfalls)
        out << "shortfall " << file_stem(g.split, g.alignment) << " type " << s.itype << " length "
            << s.length << ": " << s.got << "/" << s.wanted << "\n";
    return kExitPartial;
  }
  return kExitOk;
}

struct EpisodesArgs {
  std::string in;
  std::string out = "-";
  std::string vocab_kind = "symbolic";
  std::string vocab_file;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> swap_seed;
};

int cmd_episodes(const EpisodesArgs& a, const Common& c, std::ostream& out) {
  const auto recs = read_records(a.in);
  // Fresh syllable words never overlap the vocabulary the build used.
  const Vocabulary seen = build_vocab(a.seed);
  const Vocabulary vocab =
      make_vocab(a.vocab_kind, a.vocab_file, derive_seed(a.seed, "unseen"), &seen);
  const std::uint64_t swap = a.swap_seed.value_or(derive_seed(a.seed, "swap"));
  const auto swapped = swap_vocabulary(recs, vocab, swap);
  emit_rows(a.out, to_rows(swapped), out);
  Json r = report_head("episodes");
  r["seed"] = a.seed;
  r["swap_seed"] = swap;
  r["vocabulary"] = a.vocab_kind;
  r["records"] = swapped.size();
  finish_report(c, r);
  return kExitOk;
}

struct FlattenArgs {
  std::string in;
  std::string baseline;
  std::string out = "-";
};

int cmd_flatten(const FlattenArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto pairs = flatten_to_baseline(read_records(a.in));
  std::vector<Json> rows;
  for (const auto& p : pairs) rows.push_back(baseline_pair_to_json(p));
  emit_rows(a.out, rows, out);
  Json r = report_head("flatten-baseline");
  r["pairs"] = pairs.size();
  int code = kExitOk;
  if (!a.baseline.empty()) {
    const auto base = flatten_to_baseline(read_records(a.baseline));
    const bool holds = base == pairs;
    r["d_equality"] = Json{{"baseline_pairs", base.size()}, {"holds", holds}};
    if (!holds) {
      err << "flattened episodes differ from " << a.baseline << "\n";
      code = kExitPartial;
    }
  }
  finish_report(c, r);
  return code;
}

struct OracleArgs {
  std::string kb;
  std::string kb_id;
  std::string hypothesis;
  bool semantic = false;
};

KnowledgeBase load_one_kb(const std::string& path, const std::string& id) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<Json> docs;
  try {
    docs.push_back(Json::parse(buf.str()));
  } catch (const Json::exception&) {
    buf.clear();
    buf.seekg(0);
    docs = read_jsonl(buf, path);
  }
  for (const auto& d : docs) {
    KnowledgeBase kb = kb_from_json(d);
    if (id.empty() || kb.id() == id) return kb;
  }
  throw InputError("no knowledge base " + (id.empty() ? std::string("records") : "'" + id + "'") + " in " + path);
}

// The premises alone, renumbered onto the terms they mention.
std::pair<std::size_t, std::vector<Formula>> compact(const std::vector<Formula>& fs, Formula& h) {
  std::map<TermId, TermId> ids;
  auto id = [&](TermId t) {
    auto [it, _] = ids.emplace(t, static_cast<TermId>(ids.size()));
    return it->second;
  };
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back({f.q, id(f.subj), id(f.obj)});
  h = {h.q, id(h.subj), id(h.obj)};
  return {ids.size(), out};
}

int cmd_oracle(const OracleArgs& a, const Common& c, std::ostream& out) {
  const KnowledgeBase kb = load_one_kb(a.kb, a.kb_id);
  const Assignment asg = indexed_assignment(kb.n_terms());
  const Lexicon lex(asg);
  const auto h = parse_formula(a.hypothesis, lex);
  if (!h) throw InputError("cannot read hypothesis '" + a.hypothesis + "' over x1..x" + std::to_string(kb.n_terms()));

  Json r{{"kb_id", kb.id()}, {"hypothesis", render_formula(*h, asg)}};
  const bool ok = consistent_syntactic(kb);
  r["consistent"] = ok;
  if (!ok) throw InconsistentKbError("knowledge base " + kb.id() + " is inconsistent");
  const auto sets = all_minimal_premises(kb, *h);
  r["entailed"] = !sets.empty();
  Json js = Json::array();
  for (const auto& m : sets) {
    Json j = inference_to_json(kb, m);
    j.erase("kb_id");
    j.erase("hypothesis");
    if (a.semantic) {
      // Entailment by the premises alone, and loss of it without any one.
      std::vector<Formula> prem;
      for (auto i : m.premises.indices()) prem.push_back(kb[i]);
      Formula hh = *h;
      auto [n, fs] = compact(prem, hh);
      const OracleOptions opts{kOracleHardTermCap};
      const auto bound = [&](const std::vector<Formula>& p) {
        return ModelBound{entailment_bound(n, p, hh)};
      };
      bool minimal = true;
      for (std::size_t k = 0; k < fs.size() && minimal; ++k) {
        auto less = fs;
        less.erase(less.begin() + static_cast<long>(k));
        if (entails_semantic(n, less, hh, bound(less), opts)) minimal = false;
      }
      j["semantic"] = Json{{"entails", entails_semantic(n, fs, hh, bound(fs), opts)}, {"minimal", minimal}};
    }
    js.push_back(j);
  }
  r["minimal_sets"] = js;
  out << r.dump(2) << '\n';
  Json rep = report_head("oracle");
  rep["result"] = r;
  finish_report(c, rep);
  return kExitOk;
}

struct EvalArgs {
  std::string gold;
  std::vector<std::string> preds;
  std::string scored;
  std::string mask = "observed";
};

int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out) {
  const auto gold = read_records(a.gold);
  const CellMask standard = CellMask::standard();
  const CellMask* mask = a.mask == "standard" ? &standard : nullptr;
  std::vector<MetricsReport> reports;
  Json runs = Json::array();
  for (std::size_t k = 0; k < a.preds.size(); ++k) {
    std::vector<PredictionRecord> preds;
    std::size_t line = 0;
    for (const auto& j : read_jsonl(a.preds[k])) {
      ++line;
      try {
        preds.push_back(prediction_from_json(j));
      } catch (const InputError& e) {
        throw InputError(a.preds[k] + ": record " + std::to_string(line) + ": " + e.what());
      }
    }
    const Evaluation ev = evaluate(gold, preds, mask);
    if (!a.scored.empty()) {
      std::vector<Json> rows;
      for (const auto& s : ev.scored) rows.push_back(scored_to_json(s));
      const std::string path = a.preds.size() == 1 ? a.scored : a.scored + "." + std::to_string(k);
      write_jsonl(path, rows);
    }
    Json m = metrics_to_json(ev.report);
    m["meta"]["unpredicted"] = ev.unpredicted;
    m["meta"]["predictions"] = a.preds[k];
    runs.push_back(m);
    reports.push_back(ev.report);
  }
  Json result;
  if (runs.size() == 1) {
    result = runs.front();
  } else {
    Json summary = Json::object();
    for (const auto& [name, ms] : summarize_reports(reports))
      summary[name] = Json{{"mean", ms.mean}, {"std", ms.std}};
    result = Json{{"runs", runs}, {"summary", summary}};
  }
  out << result.dump(2) << '\n';
  Json r = report_head("eval");
  r["gold"] = a.gold;
  r["records"] = gold.size();
  r["prediction_files"] = a.preds.size();
  finish_report(c, r);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Syllogistic premise-selection workbench", "syllo"};
  app.require_subcommand(1);
  Common common;
  auto add_report = [&](CLI::App* s) {
    s->add_option("--report", common.report, "Write run metadata as JSON to this path");
  };
  const std::vector<std::string> purposes = {"train", "val", "test"};

  GenArgs gen;
  auto* s_gen = app.add_subcommand("gen-kbs", "Generate knowledge bases");
  s_gen->add_option("--count", gen.count, "Number of knowledge bases")->required()->check(CLI::PositiveNumber);
  s_gen->add_option("--purpose", gen.purpose, "train, val or test")->check(CLI::IsMember(purposes));
  s_gen->add_option("--seed", gen.seed, "Master seed")->required();
  s_gen->add_option("--out", gen.out, "Output JSONL path, - for stdout");
  add_report(s_gen);

  EnumArgs en;
  auto* s_enum = app.add_subcommand("enum", "Enumerate minimal inferences of knowledge bases");
  s_enum->add_option("--kbs", en.kbs, "Knowledge base JSONL")->required();
  s_enum->add_option("--out", en.out, "Output JSONL path, - for stdout");
  add_report(s_enum);

  StatsArgs st;
  auto* s_stats = app.add_subcommand("stats", "Type-length grid of knowledge bases");
  s_stats->add_option("--kbs", st.kbs, "Knowledge base JSONL");
  s_stats->add_option("--count", st.count, "Generate this many knowledge bases instead");
  s_stats->add_option("--purpose", st.purpose, "train, val or test")->check(CLI::IsMember(purposes));
  s_stats->add_option("--seed", st.seed, "Master seed for generation");
  s_stats->add_flag("--json", st.json, "Print JSON instead of a table");
  add_report(s_stats);

  BuildArgs bd;
  auto* s_build = app.add_subcommand("build-dataset", "Build and render a full dataset");
  s_build->add_option("--experiment", bd.experiment, "core, short2long or long2short")
      ->check(CLI::IsMember({"core", "short2long", "long2short"}));
  s_build->add_option("--seed", bd.seed, "Master seed")->required();
  s_build->add_flag("--limited", bd.limited, "Train quota reduced tenfold");
  s_build->add_option("--out-dir", bd.out_dir, "Output directory")->required();
  s_build->add_option("--vocab-kind", bd.vocab_kind, "syllable, symbolic or external")
      ->check(CLI::IsMember({"syllable", "symbolic", "external"}));
  s_build->add_option("--vocab-file", bd.vocab_file, "Word list for --vocab-kind external");
  s_build->add_option("--quota-train", bd.quota_train, "Train queries per cell")->check(CLI::NonNegativeNumber);
  s_build->add_option("--quota-val", bd.quota_val, "Validation queries per cell")->check(CLI::NonNegativeNumber);
  s_build->add_option("--quota-test", bd.quota_test, "Test queries per cell")->check(CLI::NonNegativeNumber);
  s_build->add_option("--initial-kbs", bd.initial_kbs, "Knowledge bases per split before the first selection")
      ->check(CLI::PositiveNumber);
  s_build->add_option("--max-kbs", bd.max_kbs, "Knowledge base cap per split")->check(CLI::PositiveNumber);
  add_report(s_build);

  EpisodesArgs ep;
  auto* s_ep = app.add_subcommand("episodes", "Re-render an episode or baseline file with other words");
  s_ep->add_option("--in", ep.in, "Episode or baseline JSONL")->required();
  s_ep->add_option("--out", ep.out, "Output JSONL path, - for stdout");
  s_ep->add_option("--vocab-kind", ep.vocab_kind, "syllable (unseen words), symbolic or external")
      ->check(CLI::IsMember({"syllable", "symbolic", "external"}));
  s_ep->add_option("--vocab-file", ep.vocab_file, "Word list for --vocab-kind external");
  s_ep->add_option("--seed", ep.seed, "Seed the dataset was built with")->required();
  s_ep->add_option("--swap-seed", ep.swap_seed, "Seed of the word draws");
  add_report(s_ep);

  FlattenArgs fl;
  auto* s_fl = app.add_subcommand("flatten-baseline", "Union of all pairs in an episode file");
  s_fl->add_option("--in", fl.in, "Episode JSONL")->required();
  s_fl->add_option("--baseline", fl.baseline, "Baseline JSONL to compare against");
  s_fl->add_option("--out", fl.out, "Output JSONL path, - for stdout");
  add_report(s_fl);

  OracleArgs orc;
  auto* s_or = app.add_subcommand("oracle", "Minimal premise sets of one hypothesis");
  s_or->add_option("--kb", orc.kb, "Knowledge base JSON or JSONL")->required();
  s_or->add_option("--kb-id", orc.kb_id, "Record to use from a JSONL file");
  s_or->add_option("--hypothesis", orc.hypothesis, "e.g. \"Some x12 are not x1\"")->required();
  s_or->add_flag("--semantic", orc.semantic, "Confirm each set with the model-theoretic oracle");
  add_report(s_or);

  EvalArgs ev;
  auto* s_ev = app.add_subcommand("eval", "Score predictions against gold episodes");
  s_ev->add_option("--gold", ev.gold, "Gold episode or baseline JSONL")->required();
  s_ev->add_option("--pred", ev.preds, "Predictions JSONL (repeat for several runs)")->required();
  s_ev->add_option("--scored", ev.scored, "Write per-record scores to this path");
  s_ev->add_option("--mask", ev.mask, "Short/Long from observed lengths or the full cell layout")
      ->check(CLI::IsMember({"observed", "standard"}));
  add_report(s_ev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s_gen) return cmd_gen(gen, common, out);
    if (*s_enum) return cmd_enum(en, common, out);
    if (*s_stats) return cmd_stats(st, common, out);
    if (*s_build) return cmd_build(bd, common, out);
    if (*s_ep) return cmd_episodes(ep, common, out);
    if (*s_fl) return cmd_flatten(fl, common, out, err);
    if (*s_or) return cmd_oracle(orc, common, out);
    if (*s_ev) return cmd_eval(ev, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace syllo
