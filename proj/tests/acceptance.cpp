// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Thresholds are fixed below; nothing is tuned per run.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "eval_fixtures.hpp"
#include "syllo/cli.hpp"
#include "syllo/episodes.hpp"
#include "syllo/errors.hpp"
#include "syllo/evaluator.hpp"
#include "syllo/inference.hpp"
#include "syllo/io.hpp"
#include "syllo/kbgen.hpp"
#include "syllo/logic.hpp"
#include "syllo/oracle.hpp"
#include "syllo/render.hpp"
#include "syllo/rng.hpp"

using namespace syllo;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 0;  // BuildConfig default

// Criterion limits.
constexpr int kOracleKbs = 500;
constexpr std::size_t kOracleMaxTerms = 6;
constexpr std::size_t kOracleMaxPremises = 8;
constexpr double kOracleSeconds = 600;
constexpr int kConsistencySets = 10000;
constexpr int kGeneratedKbs = 1000;
constexpr int kRoundTrips = 1000;
constexpr int kFuzzPredictions = 100000;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Formula> random_formulas(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<Formula> ps;
  while (ps.size() < m) {
    auto a = static_cast<TermId>(rng.below(n));
    auto b = static_cast<TermId>(rng.below(n));
    if (a == b) continue;
    ps.push_back({static_cast<Quantifier>(rng.below(4)), a, b});
  }
  return ps;
}

using IndexSets = std::vector<std::vector<std::size_t>>;

IndexSets sorted_sets(const std::vector<PremiseSet>& sets) {
  IndexSets out;
  for (const auto& s : sets) {
    const auto idx = s.indices();
    out.emplace_back(idx.begin(), idx.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(kSeed, "acceptance/oracle"));
  int kbs = 0, drawn = 0;
  std::size_t hyps = 0, bad = 0, entailed = 0, redundant = 0;
  while (kbs < kOracleKbs) {
    ++drawn;
    const std::size_t n = 2 + rng.below(kOracleMaxTerms - 1);
    KnowledgeBase kb("r" + std::to_string(drawn), n, random_formulas(rng, n, rng.below(kOracleMaxPremises + 1)));
    // entails is only defined on consistent knowledge bases.
    if (!consistent_semantic(kb, ModelBound{completeness_bound(n, kb.premises())})) continue;
    ++kbs;
    for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
      for (TermId x = 0; x < n; ++x)
        for (TermId y = 0; y < n; ++y) {
          if (x == y) continue;
          const Formula h{q, x, y};
          ++hyps;
          const bool sem = entails_semantic(kb, h, ModelBound{entailment_bound(n, kb.premises(), h)});
          const auto theirs = sorted_sets(minimal_premise_sets_semantic(kb, h));
          std::vector<PremiseSet> ours_sets;
          for (const auto& m : all_minimal_premises(kb, h)) ours_sets.push_back(m.premises);
          const auto ours = sorted_sets(ours_sets);
          bool ok = entails(kb, h) == sem && ours == theirs && sem == !theirs.empty();
          // Random KBs may be redundant; the unique-set query must then refuse.
          try {
            const auto one = minimal_premises(kb, h);
            ok = ok && theirs.size() <= 1 && one.has_value() == sem &&
                 (!one || sorted_sets({one->premises}) == theirs);
          } catch (const RedundancyError&) {
            ok = ok && theirs.size() > 1;
            ++redundant;
          }
          bad += !ok;
          entailed += sem;
        }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kOracleSeconds,
          fmt("%d KBs (%d drawn), %zu hypotheses, %zu entailed (%zu with several minimal sets), %zu disagreements, "
              "%.1f s (limit %.0f s)",
              kbs, drawn, hyps, entailed, redundant, bad, secs, kOracleSeconds)};
}

Verdict consistency_equivalence() {
  Rng rng(derive_seed(kSeed, "acceptance/consistency"));
  int bad = 0, consistent = 0;
  for (int i = 0; i < kConsistencySets; ++i) {
    const std::size_t n = 2 + rng.below(kOracleMaxTerms - 1);
    KnowledgeBase kb("c", n, random_formulas(rng, n, rng.below(kOracleMaxPremises + 1)));
    const bool sem = consistent_semantic(kb, ModelBound{completeness_bound(n, kb.premises())});
    bad += consistent_syntactic(kb) != sem;
    consistent += sem;
  }
  return {bad == 0, fmt("%d sets (%d consistent), %d disagreements", kConsistencySets, consistent, bad)};
}

// A-edges form a forest with at most one directed path between any two
// terms. Counted directly on the edge list.
bool unique_paths(const KnowledgeBase& kb) {
  const std::size_t n = kb.n_terms();
  std::vector<std::vector<TermId>> out(n);
  for (const auto& f : kb.premises())
    if (f.q == Quantifier::A) out[f.subj].push_back(f.obj);
  for (TermId s = 0; s < n; ++s) {
    std::vector<int> paths(n, 0);
    std::vector<TermId> stack{s};
    std::size_t steps = 0;
    while (!stack.empty()) {
      const TermId u = stack.back();
      stack.pop_back();
      for (TermId v : out[u]) {
        if (v == s || ++paths[v] > 1) return false;
        stack.push_back(v);
      }
      if (++steps > n * n) return false;
    }
  }
  return true;
}

// Every hypothesis has at most one minimal premise set, and no premise
// follows from the others.
bool nonredundant(const KnowledgeBase& kb) {
  const Reasoner r(kb);
  const auto n = static_cast<TermId>(kb.n_terms());
  for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
    for (TermId x = 0; x < n; ++x)
      for (TermId y = 0; y < n; ++y)
        if (x != y && r.minimal_sets(Formula{q, x, y}).size() > 1) return false;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    std::vector<Formula> rest = kb.premises();
    rest.erase(rest.begin() + static_cast<long>(i));
    if (Reasoner(KnowledgeBase("rest", kb.n_terms(), rest)).derivable(kb[i])) return false;
  }
  return true;
}

const std::vector<KnowledgeBase>& train_kbs() {
  static const std::vector<KnowledgeBase> kbs = [] {
    BuildConfig cfg;
    cfg.seed = kSeed;
    return gen_kbs(cfg.gen_config(Purpose::Train), kGeneratedKbs, Purpose::Train);
  }();
  return kbs;
}

Verdict generator_invariants() {
  int inconsistent = 0, forest = 0, redundant = 0, count = 0;
  int lo = 1000, hi = 0;
  for (const auto& kb : train_kbs()) {
    inconsistent += !consistent_syntactic(kb);
    forest += !unique_paths(kb);
    redundant += !nonredundant(kb);
    const int m = static_cast<int>(kb.size());
    count += m < 26 || m > 35;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const int total = inconsistent + forest + redundant + count;
  return {total == 0 && train_kbs().size() == kGeneratedKbs,
          fmt("%zu train KBs, premises %d..%d; violations: consistency %d, unique-path %d, "
              "non-redundancy %d, premise count %d",
              train_kbs().size(), lo, hi, inconsistent, forest, redundant, count)};
}

Verdict length_ranges() {
  TypeLengthGrid grid;
  for (const auto& kb : train_kbs()) grid.add_kb(kb);
  std::map<int, LengthRange> by_type;
  for (const auto& r : grid.length_ranges()) by_type[r.itype] = r;
  auto range = [&](int t) {
    return by_type.count(t) ? fmt("[%d,%d]", by_type[t].min_len, by_type[t].max_len) : std::string("none");
  };
  const bool ok = range(2) == "[1,10]" && range(3) == "[0,19]";
  return {ok, fmt("%zu default-config train KBs, %llu inferences: type 2 %s (want [1,10]), type 3 %s (want [0,19])",
                  train_kbs().size(), static_cast<unsigned long long>(grid.total()), range(2).c_str(),
                  range(3).c_str())};
}

const Dataset& build(Experiment e, bool limited) {
  static std::map<std::pair<Experiment, bool>, Dataset> cache;
  auto it = cache.find({e, limited});
  if (it == cache.end()) {
    BuildConfig cfg;
    cfg.seed = kSeed;
    cfg.experiment = e;
    cfg.limited = limited;
    it = cache.emplace(std::make_pair(e, limited), build_dataset(cfg)).first;
  }
  return it->second;
}

const Vocabulary& vocab() {
  static const Vocabulary v = syllable_vocabulary(derive_seed(kSeed, "vocab"));
  return v;
}

Verdict split_arithmetic() {
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset& core = build(Experiment::Core, false);
  const Dataset& s2l = build(Experiment::ShortToLong, false);
  const Dataset& l2s = build(Experiment::LongToShort, false);
  const Dataset& lim = build(Experiment::Core, true);
  // Limited: every train cell gets a tenth of the full quota.
  std::map<std::pair<int, int>, std::size_t> full_cells, lim_cells;
  for (const auto& ep : core.train) ++full_cells[{ep.itype, ep.length}];
  for (const auto& ep : lim.train) ++lim_cells[{ep.itype, ep.length}];
  bool tenth = full_cells.size() == lim_cells.size();
  for (const auto& [cell, n] : full_cells) tenth = tenth && lim_cells[cell] * 10 == n;
  const bool ok = core.train.size() == 97000 && s2l.train.size() == 62000 && l2s.train.size() == 62000 &&
                  lim.train.size() * 10 == core.train.size() && tenth && core.complete() && s2l.complete() &&
                  l2s.complete() && lim.complete();
  return {ok, fmt("train pairs: core %zu (want 97000), short2long %zu, long2short %zu (want 62000), "
                  "limited %zu (want 9700, per cell 1/10: %s); %.1f s",
                  core.train.size(), s2l.train.size(), l2s.train.size(), lim.train.size(), tenth ? "yes" : "no",
                  seconds_since(t0))};
}

Verdict d_equality() {
  const Dataset& ds = build(Experiment::Core, false);
  const auto flat = flatten_to_baseline(render_episodes(ds, ds.train, vocab()));
  const auto base = flatten_to_baseline(render_baseline(ds, ds.train, vocab()));
  // The abstract query set, keyed without going through text.
  std::set<std::tuple<std::size_t, int, std::size_t>> queries, all;
  for (const auto& ep : ds.train) {
    queries.insert({ep.kb, ep.variant.index(), ep.query});
    all.insert({ep.kb, ep.variant.index(), ep.query});
    for (auto s : ep.study) all.insert({ep.kb, ep.variant.index(), s});
  }
  const bool ok = flat == base && queries == all && base.size() == ds.train.size();
  return {ok, fmt("flattened episode pairs %zu, baseline pairs %zu, set-equal: %s; abstract supports within "
                  "queries: %s",
                  flat.size(), base.size(), flat == base ? "yes" : "no", queries == all ? "yes" : "no")};
}

// Maps each parsed formula to its KB index through the rendered order.
std::optional<std::vector<std::size_t>> to_indices(const std::vector<Formula>& items,
                                                   const std::vector<Formula>& rendered_kb,
                                                   const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out;
  for (const auto& f : items) {
    auto it = std::find(rendered_kb.begin(), rendered_kb.end(), f);
    if (it == rendered_kb.end()) return std::nullopt;
    out.push_back(perm[static_cast<std::size_t>(it - rendered_kb.begin())]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_pair(const ParsedPair& p, const MinimalInference& inf, const std::vector<Formula>& rendered_kb,
               const std::vector<std::size_t>& perm) {
  const auto idx = to_indices(p.premises, rendered_kb, perm);
  const auto want = inf.premises.indices();
  return p.hypothesis == inf.conclusion && idx && *idx == std::vector<std::size_t>(want.begin(), want.end());
}

Verdict round_trip() {
  const Dataset& ds = build(Experiment::Core, false);
  std::vector<const EpisodeSpec*> pool;
  for (const auto& ep : ds.train) pool.push_back(&ep);
  for (const auto& ep : ds.val) pool.push_back(&ep);
  for (const auto& [al, eps] : ds.test)
    for (const auto& ep : eps) pool.push_back(&ep);
  Rng rng(derive_seed(kSeed, "acceptance/round-trip"));
  int failures = 0;
  for (int i = 0; i < kRoundTrips; ++i) {
    const EpisodeSpec& ep = *pool[rng.below(pool.size())];
    const auto& entry = ds.kbs_for(ep.split)[ep.kb];
    const TextRecord rec = render_episode_record(ds, ep, vocab());
    const Assignment asg = variant_assignment(vocab(), entry.kb, ds.config.seed, ep.variant.assignment);
    const auto perm = variant_permutation(entry.kb, ds.config.seed, ep.variant.permutation);
    bool ok = true;
    try {
      Lexicon lex(asg);
      const ParsedText p = parse_text(rec.text, lex);
      ok = p.kb.size() == entry.kb.size() && p.study.size() == kStudyPairs;
      for (std::size_t k = 0; ok && k < perm.size(); ++k) ok = p.kb[k] == entry.kb[perm[k]];
      for (std::size_t s = 0; ok && s < kStudyPairs; ++s)
        ok = same_pair(p.study[s], entry.inferences[ep.study[s]], p.kb, perm);
      ok = ok && same_pair(p.query, entry.inferences[ep.query], p.kb, perm);
      // Gold strings are the query premises in rendered order.
      for (std::size_t g = 0; ok && g < rec.gold.size(); ++g)
        ok = g < p.query.premises.size() && render_formula(p.query.premises[g], asg) == rec.gold[g];
      ok = ok && rec.gold.size() == p.query.premises.size();
    } catch (const std::exception&) {
      ok = false;
    }
    failures += !ok;
  }
  return {failures == 0, fmt("%d episodes from train/val/test of the core build, %d failures", kRoundTrips, failures)};
}

Verdict evaluator_fixtures() {
  const Dataset& ds = build(Experiment::Core, false);
  const auto gold = render_episodes(ds, ds.test.at(Alignment::None), vocab());
  const auto cases = evalfix::build_cases(gold, derive_seed(kSeed, "acceptance/eval"));
  std::vector<PredictionRecord> preds;
  for (const auto& c : cases) preds.push_back(c.pred);
  const CellMask mask = CellMask::standard();
  const Evaluation ev = evaluate(gold, preds, &mask);
  std::size_t per_item = 0;
  std::set<std::string> kinds;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& s = ev.scored[i].score;
    const auto& w = cases[i].want;
    per_item += std::string(to_string(s.outcome)) != w.outcome || s.hp != w.hp || s.extra_count != w.extra ||
                s.missing_a_count != w.missing_a;
    kinds.insert(w.outcome + (w.hp ? "+hp" : ""));
  }
  const auto diff = evalfix::report_mismatches(ev.report, evalfix::expected_report(cases, mask));

  // Fuzz: every prediction lands in exactly one outcome, agrees with the
  // reference scorer, and the tallies partition the total.
  std::vector<GoldItem> items;
  std::vector<std::vector<std::string>> kbs;
  for (const auto& r : gold) {
    items.push_back(read_gold(r));
    kbs.push_back(evalfix::kb_strings(r));
  }
  std::mt19937_64 rng(derive_seed(kSeed, "acceptance/fuzz"));
  MetricsAccumulator acc;
  std::size_t violations = 0;
  for (int n = 0; n < kFuzzPredictions; ++n) {
    const std::size_t k = rng() % gold.size();
    const std::string raw = evalfix::fuzz_prediction(kbs[k], gold[k].gold, rng);
    const Score s = score(items[k], raw);
    const auto ref = evalfix::reference_score(kbs[k], gold[k].gold, raw);
    const int labels = (s.outcome == Outcome::Correct) + (s.outcome == Outcome::Nvm) +
                       (s.outcome == Outcome::Map) + (s.outcome == Outcome::Residual);
    bool ok = labels == 1 && std::string(to_string(s.outcome)) == ref.outcome && s.hp == ref.hp &&
              s.extra_count == ref.extra && s.missing_a_count == ref.missing_a;
    if (s.outcome == Outcome::Correct) ok = ok && !s.hp && s.extra_count == 0 && s.missing_a_count == 0;
    if (s.outcome == Outcome::Nvm) ok = ok && s.extra_count > 0 && s.missing_a_count == 0;
    if (s.outcome == Outcome::Map) ok = ok && s.missing_a_count > 0;
    violations += !ok;
    acc.add(gold[k].itype, gold[k].length, s);
  }
  const auto rep = make_report(acc);
  const bool partition = rep.total == static_cast<std::size_t>(kFuzzPredictions) &&
                         rep.correct + rep.nvm_count + rep.map_count + rep.residual_count == rep.total;
  const bool ok = per_item == 0 && diff.empty() && kinds.size() == 7 && ev.unpredicted == 0 && violations == 0 &&
                  partition;
  std::string first = diff.empty() ? "" : "; first: " + diff.front();
  return {ok, fmt("%zu fixture predictions: %zu item mismatches, %zu report fields off, %zu outcome kinds; "
                  "%d fuzzed: %zu violations, partition %s%s",
                  cases.size(), per_item, diff.size(), kinds.size(), kFuzzPredictions, violations,
                  partition ? "holds" : "broken", first.c_str())};
}

// One full run of the tool, every artifact under `dir`.
bool pipeline(const fs::path& dir, std::string& why) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string seed = std::to_string(kSeed);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  auto step = [&](const std::string& name, std::vector<std::string> args, bool keep_stdout = false) {
    args.insert(args.begin(), "syllo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (keep_stdout) std::ofstream(p(name + ".out"), std::ios::binary) << out.str();
    if (code != kExitOk) why = name + " exited " + std::to_string(code) + ": " + err.str() + out.str();
    return code == kExitOk;
  };
  if (!step("gen-kbs", {"gen-kbs", "--count", "200", "--purpose", "test", "--seed", seed, "--out", p("kbs.jsonl"),
                        "--report", p("gen-kbs.json")}))
    return false;
  if (!step("enum", {"enum", "--kbs", p("kbs.jsonl"), "--out", p("inferences.jsonl"), "--report", p("enum.json")}))
    return false;
  if (!step("stats", {"stats", "--kbs", p("kbs.jsonl")}, true)) return false;
  if (!step("build", {"build-dataset", "--seed", seed, "--out-dir", p("dataset"), "--report", p("build.json")}, true))
    return false;
  if (!step("episodes", {"episodes", "--in", p("dataset/episodes-test.jsonl"), "--seed", seed, "--vocab-kind",
                         "syllable", "--out", p("unseen-test.jsonl")}))
    return false;
  if (!step("flatten", {"flatten-baseline", "--in", p("dataset/episodes-train.jsonl"), "--baseline",
                        p("dataset/baseline-train.jsonl"), "--out", p("flat-train.jsonl")}))
    return false;
  // Predictions: a fixed mix of outcomes over the test episodes.
  std::vector<TextRecord> gold;
  for (const auto& j : read_jsonl(p("dataset/episodes-test.jsonl"))) gold.push_back(text_record_from_json(j));
  std::vector<Json> preds;
  for (const auto& c : evalfix::build_cases(gold, 17)) preds.push_back(prediction_to_json(c.pred));
  write_jsonl(p("predictions.jsonl"), preds);
  return step("eval", {"eval", "--gold", p("dataset/episodes-test.jsonl"), "--pred", p("predictions.jsonl"),
                       "--mask", "standard", "--scored", p("scored.jsonl"), "--report", p("eval.json")},
              true);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).string()] = s.str();
  }
  return files;
}

Verdict determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / ("syllo-acceptance-" + std::to_string(::getpid()));
  // Both runs use the same paths: reports record their input file names.
  std::string why;
  for (const char* keep : {"a", "b"}) {
    if (!pipeline(root / "run", why)) {
      fs::remove_all(root);
      return {false, "pipeline failed: " + why};
    }
    fs::rename(root / "run", root / keep);
  }
  const auto a = snapshot(root / "a");
  const auto b = snapshot(root / "b");
  std::size_t bytes = 0, differ = 0;
  for (const auto& [name, content] : a) {
    bytes += content.size();
    auto it = b.find(name);
    differ += it == b.end() || it->second != content;
  }
  differ += b.size() > a.size() ? b.size() - a.size() : 0;
  fs::remove_all(root);
  return {differ == 0 && !a.empty(),
          fmt("two full-scale core pipeline runs (gen-kbs, enum, stats, build-dataset, episodes, "
              "flatten-baseline, eval): %zu files, %zu bytes, %zu differ; %.1f s",
              a.size(), bytes, differ, seconds_since(t0))};
}

}  // namespace

// Arguments, if any, select criteria whose names contain one of them.
int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"consistency check equivalence", consistency_equivalence},
      {"generator invariants", generator_invariants},
      {"published length ranges", length_ranges},
      {"split arithmetic", split_arithmetic},
      {"D-equality", d_equality},
      {"round-trip", round_trip},
      {"evaluator fixtures", evaluator_fixtures},
      {"determinism", determinism},
  };
  int failed = 0, ran = 0;
  for (const auto& [name, check] : criteria) {
    bool selected = argc == 1;
    for (int i = 1; i < argc; ++i) selected = selected || name.find(argv[i]) != std::string::npos;
    if (!selected) continue;
    ++ran;
    Verdict o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 && ran > 0 ? 0 : 1;
}
