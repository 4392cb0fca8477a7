#include "syllo/episodes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "syllo/errors.hpp"

namespace syllo {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Core: return "core";
    case Experiment::ShortToLong: return "short2long";
    case Experiment::LongToShort: return "long2short";
  }
  return "?";
}

Experiment experiment_from_string(std::string_view s) {
  if (s == "core") return Experiment::Core;
  if (s == "short2long") return Experiment::ShortToLong;
  if (s == "long2short") return Experiment::LongToShort;
  throw InputError("unknown experiment '" + std::string(s) + "'");
}

std::string_view to_string(Alignment a) {
  switch (a) {
    case Alignment::None: return "none";
    case Alignment::Aligned: return "aligned";
    case Alignment::Disaligned: return "disaligned";
  }
  return "?";
}

Alignment alignment_from_string(std::string_view s) {
  if (s == "none") return Alignment::None;
  if (s == "aligned") return Alignment::Aligned;
  if (s == "disaligned") return Alignment::Disaligned;
  throw InputError("unknown alignment '" + std::string(s) + "'");
}

// ---- cells and windows ----

CellMask::CellMask(std::vector<LengthRange> ranges) : ranges_(std::move(ranges)) {
  std::set<int> seen;
  for (const auto& r : ranges_) {
    if (r.itype < 1 || r.itype > kNumTypes)
      throw InputError("cell mask: type " + std::to_string(r.itype) + " outside 1..7");
    if (!seen.insert(r.itype).second)
      throw InputError("cell mask: type " + std::to_string(r.itype) + " listed twice");
    if (r.min_len < 0 || r.min_len > r.max_len || r.max_len > kMaxGridLength)
      throw InputError("cell mask: bad length range for type " + std::to_string(r.itype));
  }
  std::sort(ranges_.begin(), ranges_.end(),
            [](const LengthRange& a, const LengthRange& b) { return a.itype < b.itype; });
}

CellMask CellMask::standard() {
  return CellMask({{1, 0, 12}, {2, 1, 10}, {3, 0, 19}, {4, 1, 13}, {5, 0, 13}, {6, 0, 13},
                   {7, 0, 12}});
}

CellMask CellMask::from_grid(const TypeLengthGrid& grid) {
  std::vector<LengthRange> out;
  for (auto r : grid.length_ranges()) {
    if (r.min_len > kMaxGridLength) continue;
    r.max_len = std::min(r.max_len, kMaxGridLength);
    out.push_back(r);
  }
  return CellMask(std::move(out));
}

std::optional<LengthRange> CellMask::range(int itype) const {
  for (const auto& r : ranges_)
    if (r.itype == itype) return r;
  return std::nullopt;
}

bool CellMask::contains(int itype, int length) const {
  auto r = range(itype);
  return r && r->min_len <= length && length <= r->max_len;
}

std::size_t CellMask::cell_count() const {
  std::size_t n = 0;
  for (const auto& r : ranges_) n += static_cast<std::size_t>(r.max_len - r.min_len + 1);
  return n;
}

SplitSpec::SplitSpec(Experiment experiment, CellMask mask, Quotas quotas)
    : experiment_(experiment), mask_(std::move(mask)), quotas_(quotas) {
  if (quotas_.train < 0 || quotas_.val < 0 || quotas_.test < 0)
    throw InputError("quotas must be non-negative");
}

namespace {

constexpr int kShift = 5;  // window offset of the length-generalization splits

std::optional<IntRange> clipped(int lo, int hi, const LengthRange& r) {
  lo = std::max(lo, r.min_len);
  hi = std::min(hi, r.max_len);
  if (lo > hi) return std::nullopt;
  return IntRange{lo, hi};
}

}  // namespace

std::optional<IntRange> SplitSpec::query_window(Purpose split, int itype) const {
  auto r = mask_.range(itype);
  if (!r) return std::nullopt;
  const int s = r->min_len;
  const int m = r->max_len;
  const bool test = split == Purpose::Test;
  switch (experiment_) {
    case Experiment::Core: return IntRange{s, m};
    case Experiment::ShortToLong:
      return test ? clipped(m - kShift + 1, m, *r) : clipped(s, m - kShift, *r);
    case Experiment::LongToShort:
      return test ? clipped(s, s + kShift - 1, *r) : clipped(s + kShift, m, *r);
  }
  return std::nullopt;
}

std::optional<IntRange> SplitSpec::support_window(Purpose split, Alignment a, int itype) const {
  if (split != Purpose::Test || a == Alignment::None || a == Alignment::Aligned)
    return query_window(split, itype);
  return query_window(Purpose::Train, itype);
}

int SplitSpec::quota(Purpose split) const {
  switch (split) {
    case Purpose::Train: return quotas_.train;
    case Purpose::Val: return quotas_.val;
    case Purpose::Test: return quotas_.test;
  }
  return 0;
}

std::vector<Alignment> SplitSpec::test_alignments() const {
  if (experiment_ == Experiment::Core) return {Alignment::None};
  return {Alignment::Aligned, Alignment::Disaligned};
}

std::vector<std::pair<int, int>> SplitSpec::cells(Purpose split) const {
  std::vector<std::pair<int, int>> out;
  for (int t = 1; t <= kNumTypes; ++t)
    if (auto w = query_window(split, t))
      for (int len = w->lo; len <= w->hi; ++len) out.emplace_back(t, len);
  return out;
}

std::size_t SplitSpec::total_quota(Purpose split) const {
  return cells(split).size() * static_cast<std::size_t>(quota(split));
}

SplitSpec BuildConfig::spec() const {
  return SplitSpec(experiment, mask, limited ? quotas.limited() : quotas);
}

GenConfig BuildConfig::gen_config(Purpose p) const {
  GenConfig g = gen ? *gen : GenConfig::for_purpose(p, 0);
  g.seed = derive_seed(seed, "kbgen");
  return g;
}

bool Dataset::complete() const {
  return std::all_of(groups.begin(), groups.end(),
                     [](const GroupReport& g) { return g.shortfalls.empty(); });
}

// ---- selection ----

namespace {

// Fisher-Yates over [0, n) that only materializes touched positions.
class LazyShuffle {
 public:
  LazyShuffle(std::uint64_t n, Rng& rng) : n_(n), rng_(&rng) {}
  [[nodiscard]] bool done() const { return i_ >= n_; }
  std::uint64_t next() {
    const std::uint64_t j = i_ + rng_->below(n_ - i_);
    const std::uint64_t vj = at(j);
    swapped_[j] = at(i_);
    ++i_;
    return vj;
  }

 private:
  std::uint64_t at(std::uint64_t k) const {
    auto it = swapped_.find(k);
    return it == swapped_.end() ? k : it->second;
  }
  std::uint64_t n_;
  std::uint64_t i_ = 0;
  Rng* rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

struct Item {
  std::size_t kb;
  std::size_t inf;
};

using CellKey = std::pair<int, int>;

std::string group_label(Purpose split, Alignment a) {
  return std::string(to_string(split)) + "/" + std::string(to_string(a));
}

std::array<std::size_t, kStudyPairs> pick_study(const std::vector<std::size_t>& pool,
                                                std::size_t query, Rng& rng) {
  std::vector<std::size_t> others;
  others.reserve(pool.size());
  for (auto j : pool)
    if (j != query) others.push_back(j);
  auto idx = rng.sample_indices(others.size(), kStudyPairs);
  std::array<std::size_t, kStudyPairs> out{};
  for (std::size_t k = 0; k < kStudyPairs; ++k) out[k] = others[idx[k]];
  return out;
}

struct Selection {
  std::vector<EpisodeSpec> episodes;
  GroupReport report;
};

// Train: queries are picked per cell, scarcest cells first. Starting a new
// (KB, variant, type) block requires three companions in cells that still
// have quota, so every block ends with at least four members and each query
// can draw its three study pairs from its own block.
Selection select_train(const std::vector<KbEntry>& kbs, const SplitSpec& spec,
                       std::uint64_t seed) {
  const Purpose split = Purpose::Train;
  const int quota = spec.quota(split);
  Rng rng(derive_seed(seed, "select/" + group_label(split, Alignment::None)));

  std::map<CellKey, std::vector<Item>> items;
  for (auto c : spec.cells(split)) items[c];
  // Per KB and type: in-window inference indices.
  std::vector<std::array<std::vector<std::size_t>, kNumTypes>> by_type(kbs.size());
  for (std::size_t k = 0; k < kbs.size(); ++k) {
    const auto& infs = kbs[k].inferences;
    for (std::size_t i = 0; i < infs.size(); ++i) {
      auto it = items.find({infs[i].itype, infs[i].length});
      if (it == items.end()) continue;
      it->second.push_back({k, i});
      by_type[k][infs[i].itype - 1].push_back(i);
    }
  }

  std::map<CellKey, int> remaining;
  for (const auto& [c, v] : items) remaining[c] = quota;
  std::vector<std::vector<std::uint32_t>> chosen(kbs.size());  // variant bitmask per inference
  for (std::size_t k = 0; k < kbs.size(); ++k) chosen[k].assign(kbs[k].inferences.size(), 0);
  std::vector<std::array<std::array<int, kVariantsPerKb>, kNumTypes>> block(kbs.size());
  for (auto& b : block)
    for (auto& row : b) row.fill(0);

  auto cell_of = [&](std::size_t k, std::size_t i) {
    const auto& inf = kbs[k].inferences[i];
    return CellKey{inf.itype, inf.length};
  };
  auto take = [&](std::size_t k, std::size_t i, int v) {
    chosen[k][i] |= std::uint32_t{1} << v;
    ++block[k][kbs[k].inferences[i].itype - 1][v];
    --remaining[cell_of(k, i)];
  };

  std::vector<CellKey> order;
  for (const auto& [c, v] : items) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](const CellKey& a, const CellKey& b) {
    return items[a].size() < items[b].size();
  });

  for (const auto& c : order) {
    const auto& list = items[c];
    LazyShuffle sh(list.size() * kVariantsPerKb, rng);
    while (remaining[c] > 0 && !sh.done()) {
      const std::uint64_t draw = sh.next();
      const Item it = list[draw / kVariantsPerKb];
      const int v = static_cast<int>(draw % kVariantsPerKb);
      if ((chosen[it.kb][it.inf] >> v) & 1U) continue;
      const int t = kbs[it.kb].inferences[it.inf].itype;
      if (block[it.kb][t - 1][v] > 0) {
        take(it.kb, it.inf, v);
        continue;
      }
      std::vector<std::size_t> pool;
      for (auto j : by_type[it.kb][t - 1])
        if (j != it.inf) pool.push_back(j);
      rng.shuffle(pool);
      std::map<CellKey, int> left = remaining;
      --left[c];
      std::vector<std::size_t> mates;
      for (auto j : pool) {
        if (mates.size() == kStudyPairs) break;
        auto cj = cell_of(it.kb, j);
        if (left[cj] > 0) {
          --left[cj];
          mates.push_back(j);
        }
      }
      if (mates.size() < kStudyPairs) continue;
      take(it.kb, it.inf, v);
      for (auto j : mates) take(it.kb, j, v);
    }
  }

  Selection sel;
  sel.report.split = split;
  sel.report.quota_total = spec.total_quota(split);
  std::set<std::size_t> used;
  for (std::size_t k = 0; k < kbs.size(); ++k) {
    for (int t = 1; t <= kNumTypes; ++t) {
      for (int v = 0; v < kVariantsPerKb; ++v) {
        if (block[k][t - 1][v] == 0) continue;
        std::vector<std::size_t> members;
        for (auto i : by_type[k][t - 1])
          if ((chosen[k][i] >> v) & 1U) members.push_back(i);
        if (members.size() <= kStudyPairs)
          throw InternalError("train block below four members");
        used.insert(k);
        for (auto q : members) {
          EpisodeSpec ep;
          ep.split = split;
          ep.kb = k;
          ep.variant = Variant::from_index(v);
          ep.query = q;
          ep.study = pick_study(members, q, rng);
          ep.itype = t;
          ep.length = kbs[k].inferences[q].length;
          sel.episodes.push_back(std::move(ep));
        }
      }
    }
  }
  sel.report.kbs_used = used.size();
  for (const auto& [c, r] : remaining)
    if (r > 0) sel.report.shortfalls.push_back({c.first, c.second, quota, quota - r});
  return sel;
}

// Validation and test: queries are drawn uniformly per cell among the
// (inference, variant) pairs whose KB holds at least three other same-type
// inferences in the support window; those three are drawn at random.
Selection select_eval(const std::vector<KbEntry>& kbs, const SplitSpec& spec, Purpose split,
                      Alignment align, std::uint64_t seed) {
  const int quota = spec.quota(split);
  Rng rng(derive_seed(seed, "select/" + group_label(split, align)));

  std::vector<std::array<std::vector<std::size_t>, kNumTypes>> pool(kbs.size());
  std::array<std::optional<IntRange>, kNumTypes> sw;
  for (int t = 1; t <= kNumTypes; ++t) sw[t - 1] = spec.support_window(split, align, t);
  for (std::size_t k = 0; k < kbs.size(); ++k) {
    const auto& infs = kbs[k].inferences;
    for (std::size_t i = 0; i < infs.size(); ++i) {
      const auto& w = sw[infs[i].itype - 1];
      if (w && w->contains(infs[i].length)) pool[k][infs[i].itype - 1].push_back(i);
    }
  }

  Selection sel;
  sel.report.split = split;
  sel.report.alignment = align;
  sel.report.quota_total = spec.total_quota(split);
  std::map<CellKey, std::vector<Item>> items;
  for (auto c : spec.cells(split)) items[c];
  for (std::size_t k = 0; k < kbs.size(); ++k) {
    const auto& infs = kbs[k].inferences;
    for (std::size_t i = 0; i < infs.size(); ++i) {
      auto it = items.find({infs[i].itype, infs[i].length});
      if (it == items.end()) continue;
      const auto& p = pool[k][infs[i].itype - 1];
      const bool in_pool = std::find(p.begin(), p.end(), i) != p.end();
      if (p.size() - (in_pool ? 1 : 0) < kStudyPairs) {
        ++sel.report.skipped_no_support;
        continue;
      }
      it->second.push_back({k, i});
    }
  }

  std::set<std::size_t> used;
  for (const auto& [c, list] : items) {
    LazyShuffle sh(list.size() * kVariantsPerKb, rng);
    int got = 0;
    while (got < quota && !sh.done()) {
      const std::uint64_t draw = sh.next();
      const Item it = list[draw / kVariantsPerKb];
      EpisodeSpec ep;
      ep.split = split;
      ep.alignment = align;
      ep.kb = it.kb;
      ep.variant = Variant::from_index(static_cast<int>(draw % kVariantsPerKb));
      ep.query = it.inf;
      ep.study = pick_study(pool[it.kb][c.first - 1], it.inf, rng);
      ep.itype = c.first;
      ep.length = c.second;
      sel.episodes.push_back(std::move(ep));
      used.insert(it.kb);
      ++got;
    }
    if (got < quota) sel.report.shortfalls.push_back({c.first, c.second, quota, got});
  }
  sel.report.kbs_used = used.size();
  return sel;
}

// Fewest KBs worth trying next, from the worst cell's fill ratio.
std::size_t next_budget(std::size_t n, const std::vector<Selection>& sels, std::size_t max_kbs) {
  double factor = 1.25;
  for (const auto& s : sels)
    for (const auto& f : s.report.shortfalls)
      factor = std::max(factor, f.got == 0 ? 4.0 : 1.2 * f.wanted / f.got);
  factor = std::min(factor, 4.0);
  auto want = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * factor));
  return std::min(max_kbs, std::max(want, n + 1));
}

void finish(std::vector<EpisodeSpec>& eps, const SplitSpec& spec, std::uint64_t seed) {
  if (eps.empty()) return;
  Rng rng(derive_seed(seed, "order/" + group_label(eps.front().split, eps.front().alignment)));
  rng.shuffle(eps);
  std::string prefix = std::string(to_string(spec.experiment())) + "-" +
                       std::string(to_string(eps.front().split)) + "-";
  if (eps.front().alignment != Alignment::None)
    prefix += std::string(to_string(eps.front().alignment)) + "-";
  char buf[16];
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%06zu", i);
    eps[i].id = prefix + buf;
  }
}

}  // namespace

Dataset build_dataset(const BuildConfig& cfg) {
  if (cfg.initial_kbs == 0 || cfg.max_kbs < cfg.initial_kbs)
    throw InputError("need 0 < initial_kbs <= max_kbs");
  const SplitSpec spec = cfg.spec();
  Dataset ds;
  ds.config = cfg;

  for (Purpose p : {Purpose::Train, Purpose::Val, Purpose::Test}) {
    const auto pi = static_cast<std::size_t>(p);
    KbStream stream(cfg.gen_config(p), p);
    auto& kbs = ds.kbs[pi];
    std::vector<Alignment> aligns =
        p == Purpose::Test ? spec.test_alignments() : std::vector<Alignment>{Alignment::None};
    std::size_t budget = cfg.initial_kbs;
    std::vector<Selection> sels;
    for (;;) {
      while (kbs.size() < budget) {
        KnowledgeBase kb = stream.next();
        auto infs = enumerate_inferences(kb);
        kbs.push_back({std::move(kb), std::move(infs)});
      }
      sels.clear();
      for (auto a : aligns)
        sels.push_back(p == Purpose::Train ? select_train(kbs, spec, cfg.seed)
                                           : select_eval(kbs, spec, p, a, cfg.seed));
      const bool short_any = std::any_of(sels.begin(), sels.end(), [](const Selection& s) {
        return !s.report.shortfalls.empty();
      });
      if (!short_any || budget >= cfg.max_kbs) break;
      budget = next_budget(budget, sels, cfg.max_kbs);
    }
    ds.gen_reports[pi] = stream.report();
    for (std::size_t k = 0; k < sels.size(); ++k) {
      auto& s = sels[k];
      finish(s.episodes, spec, cfg.seed);
      s.report.emitted = s.episodes.size();
      ds.groups.push_back(s.report);
      if (p == Purpose::Train) ds.train = std::move(s.episodes);
      else if (p == Purpose::Val) ds.val = std::move(s.episodes);
      else ds.test[aligns[k]] = std::move(s.episodes);
    }
  }
  return ds;
}

// ---- rendering ----

Assignment variant_assignment(const Vocabulary& vocab, const KnowledgeBase& kb,
                              std::uint64_t seed, int assignment) {
  Rng rng(derive_seed(seed, "assignment/" + kb.id(), static_cast<std::uint64_t>(assignment)));
  return random_assignment(vocab, kb.n_terms(), rng);
}

std::vector<std::size_t> variant_permutation(const KnowledgeBase& kb, std::uint64_t seed,
                                             int permutation) {
  Rng rng(derive_seed(seed, "permutation/" + kb.id(), static_cast<std::uint64_t>(permutation)));
  return random_permutation(kb.size(), rng);
}

namespace {

TextRecord record_head(const Dataset& ds, const EpisodeSpec& ep) {
  TextRecord r;
  r.id = ep.id;
  r.experiment = std::string(to_string(ds.config.experiment));
  r.split = std::string(to_string(ep.split));
  r.alignment = std::string(to_string(ep.alignment));
  r.itype = ep.itype;
  r.length = ep.length;
  r.kb_id = ds.kbs_for(ep.split).at(ep.kb).kb.id();
  r.variant = ep.variant;
  return r;
}

struct Surface {
  const KbEntry* entry;
  Assignment asg;
  std::vector<std::size_t> perm;
};

Surface surface(const Dataset& ds, const EpisodeSpec& ep, const Vocabulary& vocab,
                const RenderOptions& opts) {
  const auto& entry = ds.kbs_for(ep.split).at(ep.kb);
  const std::uint64_t seed = opts.surface_seed.value_or(ds.config.seed);
  return {&entry, variant_assignment(vocab, entry.kb, seed, ep.variant.assignment),
          variant_permutation(entry.kb, seed, ep.variant.permutation)};
}

}  // namespace

TextRecord render_episode_record(const Dataset& ds, const EpisodeSpec& ep, const Vocabulary& vocab,
                                 const RenderOptions& opts) {
  const Surface s = surface(ds, ep, vocab, opts);
  const auto& infs = s.entry->inferences;
  const auto& q = infs.at(ep.query);
  std::vector<StudyPair> study;
  for (auto i : ep.study) study.push_back({infs.at(i).conclusion, infs.at(i).premises});
  TextRecord r = record_head(ds, ep);
  r.text = render_episode(s.entry->kb, study, q.conclusion, q.premises, s.asg, s.perm);
  r.gold = render_premises(s.entry->kb, q.premises, s.asg, s.perm);
  return r;
}

TextRecord render_baseline_record(const Dataset& ds, const EpisodeSpec& ep,
                                  const Vocabulary& vocab, const RenderOptions& opts) {
  const Surface s = surface(ds, ep, vocab, opts);
  const auto& q = s.entry->inferences.at(ep.query);
  TextRecord r = record_head(ds, ep);
  r.text = render_datapoint(s.entry->kb, q.conclusion, q.premises, s.asg, s.perm);
  r.gold = render_premises(s.entry->kb, q.premises, s.asg, s.perm);
  return r;
}

std::vector<TextRecord> render_episodes(const Dataset& ds, const std::vector<EpisodeSpec>& eps,
                                        const Vocabulary& vocab, const RenderOptions& opts) {
  std::vector<TextRecord> out;
  out.reserve(eps.size());
  for (const auto& ep : eps) out.push_back(render_episode_record(ds, ep, vocab, opts));
  return out;
}

std::vector<TextRecord> render_baseline(const Dataset& ds, const std::vector<EpisodeSpec>& eps,
                                        const Vocabulary& vocab, const RenderOptions& opts) {
  std::vector<TextRecord> out;
  out.reserve(eps.size());
  for (const auto& ep : eps) out.push_back(render_baseline_record(ds, ep, vocab, opts));
  return out;
}

// ---- reading records back ----

namespace {

struct ReadBack {
  Lexicon lex;
  ParsedText parsed;
  KnowledgeBase kb;
};

ReadBack read_back(const TextRecord& r) {
  Lexicon lex;
  ParsedText parsed;
  try {
    parsed = parse_text(r.text, lex, true);
  } catch (const InputError& e) {
    throw InputError("record " + r.id + ": " + e.what());
  }
  KnowledgeBase kb(r.kb_id, lex.size(), parsed.kb);
  return {std::move(lex), std::move(parsed), std::move(kb)};
}

PremiseSet premise_set(const KnowledgeBase& kb, const std::vector<Formula>& fs,
                       const std::string& id) {
  PremiseSet s;
  for (const auto& f : fs) {
    auto i = kb.index_of(f);
    if (!i) throw InputError("record " + id + ": premise " + to_string(f) + " not in its KB");
    s.insert(*i);
  }
  return s;
}

}  // namespace

std::vector<BaselinePair> flatten_to_baseline(const std::vector<TextRecord>& records) {
  std::set<BaselinePair> out;
  for (const auto& r : records) {
    ReadBack rb = read_back(r);
    Reasoner reasoner(rb.kb);
    const Assignment& words = rb.lex.words();
    auto add = [&](const ParsedPair& p) {
      BaselinePair bp;
      bp.kb_id = r.kb_id;
      bp.variant = r.variant;
      bp.hypothesis = render_formula(p.hypothesis, words);
      for (const auto& f : p.premises) bp.premises.push_back(render_formula(f, words));
      const PremiseSet given = premise_set(rb.kb, p.premises, r.id);
      auto sets = reasoner.derivable(p.hypothesis) ? reasoner.minimal_sets(p.hypothesis)
                                                   : std::vector<Reasoner::Candidate>{};
      if (sets.size() != 1 || sets.front().premises != given)
        throw InputError("record " + r.id + ": '" + bp.hypothesis +
                         "' is not paired with its unique minimal premise set");
      bp.itype = sets.front().itype;
      bp.length = reasoner.length_of(given);
      out.insert(std::move(bp));
    };
    for (const auto& p : rb.parsed.study) add(p);
    add(rb.parsed.query);
  }
  return {out.begin(), out.end()};
}

std::vector<TextRecord> swap_vocabulary(const std::vector<TextRecord>& records,
                                        const Vocabulary& vocab, std::uint64_t seed) {
  std::vector<TextRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    ReadBack rb = read_back(r);
    Rng rng(derive_seed(seed, "swap/" + r.id));
    const Assignment asg = random_assignment(vocab, rb.kb.n_terms(), rng);
    const auto perm = identity_permutation(rb.kb.size());
    const auto& q = rb.parsed.query;
    const PremiseSet gold = premise_set(rb.kb, q.premises, r.id);
    TextRecord s = r;
    if (rb.parsed.study.empty()) {
      s.text = render_datapoint(rb.kb, q.hypothesis, gold, asg, perm);
    } else {
      std::vector<StudyPair> study;
      for (const auto& p : rb.parsed.study)
        study.push_back({p.hypothesis, premise_set(rb.kb, p.premises, r.id)});
      s.text = render_episode(rb.kb, study, q.hypothesis, gold, asg, perm);
    }
    s.gold = render_premises(rb.kb, gold, asg, perm);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace syllo
