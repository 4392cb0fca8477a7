#include "syllo/kbgen.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "syllo/errors.hpp"
#include "syllo/logic.hpp"
#include "syllo/oracle.hpp"

namespace syllo {

std::string_view to_string(Purpose p) {
  switch (p) {
    case Purpose::Train: return "train";
    case Purpose::Val: return "val";
    case Purpose::Test: return "test";
  }
  return "?";
}

Purpose purpose_from_string(std::string_view s) {
  if (s == "train") return Purpose::Train;
  if (s == "val") return Purpose::Val;
  if (s == "test") return Purpose::Test;
  throw InputError("unknown purpose '" + std::string(s) + "'");
}

GenConfig GenConfig::for_purpose(Purpose p, std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  switch (p) {
    case Purpose::Train: cfg.target_premises = {26, 35}; break;
    case Purpose::Val: cfg.target_premises = {26, 36}; break;
    case Purpose::Test: cfg.target_premises = {26, 38}; break;
  }
  return cfg;
}

void GenConfig::validate() const {
  auto check = [](const IntRange& r, int min_lo, const char* name) {
    if (r.lo > r.hi || r.lo < min_lo)
      throw InputError(std::string("invalid range for ") + name + ": [" + std::to_string(r.lo) +
                       ", " + std::to_string(r.hi) + "]");
  };
  check(n_trees, 1, "n_trees");
  check(n_e, 0, "n_e");
  check(n_i, 0, "n_i");
  check(n_o, 0, "n_o");
  check(target_premises, 1, "target_premises");
  if (min_tree_size < 2) throw InputError("min_tree_size must be at least 2");
  if (max_chain_len < 1) throw InputError("max_chain_len must be positive");
  if (chain_bias < 0.0 || chain_bias > 1.0) throw InputError("chain_bias must lie in [0, 1]");
  if (max_attempts < 1) throw InputError("max_attempts must be positive");
  // Smallest A-edge budget the tree shape needs versus what the premise
  // range leaves after the largest E/I/O quota.
  const int min_a = n_trees.lo * (min_tree_size - 1);
  const int max_extra = n_e.hi + n_i.hi + n_o.hi;
  const int min_extra = n_e.lo + n_i.lo + n_o.lo;
  if (target_premises.hi - min_extra < min_a)
    throw InputError("target_premises too small for the configured trees and edge quotas");
  if (target_premises.hi > static_cast<int>(PremiseSet::kCapacity) || max_extra < 0)
    throw InputError("target_premises exceeds the supported knowledge base size");
}

GenReport& GenReport::operator+=(const GenReport& o) {
  attempts += o.attempts;
  emitted += o.emitted;
  rejected_consistency += o.rejected_consistency;
  rejected_redundancy += o.rejected_redundancy;
  rejected_quota += o.rejected_quota;
  for (auto [k, v] : o.premise_histogram) premise_histogram[k] += v;
  return *this;
}

KnowledgeBase gen_backbone(const GenConfig& cfg, Rng& rng, int n_a_edges, int n_trees,
                           const std::string& id) {
  const int n_nodes = n_a_edges + n_trees;
  const int spare = n_nodes - n_trees * cfg.min_tree_size;
  if (n_trees < 1 || spare < 0)
    throw GenerationError("cannot build " + std::to_string(n_trees) + " trees from " +
                          std::to_string(n_a_edges) + " edges");
  // Uniform composition of the spare nodes via sorted cut points.
  std::vector<int> cuts;
  for (int t = 0; t + 1 < n_trees; ++t) cuts.push_back(rng.uniform_int(0, spare));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(spare);
  std::vector<int> sizes;
  int prev = 0;
  for (int c : cuts) {
    sizes.push_back(cfg.min_tree_size + c - prev);
    prev = c;
  }

  std::vector<Formula> edges;
  TermId next_id = 0;
  for (int size : sizes) {
    std::vector<int> parent{-1};
    std::vector<int> depth{0};
    // A leaf under p is acceptable if no chain exceeds max_chain_len and no
    // two chains leaving a common node add up to more than
    // max_inference_len (that pair alone is a type-4 inference).
    auto fits_under = [&](std::size_t p) {
      if (depth[p] >= cfg.max_chain_len) return false;
      if (cfg.max_inference_len < 0) return true;
      const std::size_t n = parent.size();
      std::vector<int> height(n, 0);
      std::vector<int> best(n, 0), second(n, 0);
      auto offer = [&](std::size_t a, int h) {
        if (h > best[a]) {
          second[a] = best[a];
          best[a] = h;
        } else if (h > second[a]) {
          second[a] = h;
        }
      };
      // Children always come after parents, so a reverse sweep sees every
      // subtree before its root.
      offer(p, 1);
      for (std::size_t v = n; v-- > 0;) {
        height[v] = best[v];
        if (best[v] + second[v] > cfg.max_inference_len) return false;
        if (parent[v] >= 0) offer(static_cast<std::size_t>(parent[v]), height[v] + 1);
      }
      return true;
    };
    for (int k = 1; k < size; ++k) {
      std::size_t chosen = parent.size();
      const std::size_t last = parent.size() - 1;
      if (rng.bernoulli(cfg.chain_bias) && fits_under(last)) {
        chosen = last;
      } else {
        std::vector<std::size_t> open;
        for (std::size_t j = 0; j < parent.size(); ++j)
          if (fits_under(j)) open.push_back(j);
        if (open.empty()) throw GenerationError("no attachment point satisfies the length limits");
        chosen = open[static_cast<std::size_t>(rng.below(open.size()))];
      }
      parent.push_back(static_cast<int>(chosen));
      depth.push_back(depth[chosen] + 1);
    }
    for (std::size_t v = 1; v < parent.size(); ++v)
      edges.push_back({Quantifier::A, next_id + static_cast<TermId>(parent[v]),
                       next_id + static_cast<TermId>(v)});
    next_id += static_cast<TermId>(parent.size());
  }
  return KnowledgeBase(id, static_cast<std::size_t>(n_nodes), std::move(edges));
}

bool is_a_forest(const KnowledgeBase& kb) {
  std::vector<int> indegree(kb.n_terms(), 0);
  std::vector<TermId> parent(kb.n_terms(), 0);
  for (const auto& f : kb.premises()) {
    if (f.q != Quantifier::A) continue;
    if (++indegree[f.obj] > 1) return false;
    parent[f.obj] = f.subj;
  }
  // With in-degree <= 1 a cycle shows up as a parent walk that never ends.
  for (TermId t = 0; t < kb.n_terms(); ++t) {
    TermId u = t;
    for (std::size_t steps = 0; indegree[u] == 1; ++steps) {
      if (steps > kb.n_terms()) return false;
      u = parent[u];
    }
  }
  return true;
}

namespace {

enum class Scan { Ok, Redundant, TooLong };

// Walks every non-reflexive hypothesis (E/I canonical) once.
template <typename Visit>
void for_each_hypothesis(std::size_t n, Visit visit) {
  for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
    for (TermId x = 0; x < n; ++x)
      for (TermId y = is_symmetric(q) ? x + 1 : 0; y < n; ++y)
        if (x != y && !visit(Formula{q, x, y})) return;
}

Scan scan(const KnowledgeBase& kb, int max_len) {
  Reasoner r(kb);
  Scan result = Scan::Ok;
  for_each_hypothesis(kb.n_terms(), [&](const Formula& h) {
    if (!r.derivable(h)) return true;
    auto sets = r.minimal_sets(h);
    if (sets.size() != 1) {
      result = Scan::Redundant;
      return false;
    }
    if (max_len >= 0 && r.length_of(sets.front().premises) > max_len) {
      result = Scan::TooLong;
      return false;
    }
    return true;
  });
  return result;
}

// Same verdict as scan(with_g) for a KB that already passed scan and gains
// one E/I/O premise g (the last index): a hypothesis can only change if some
// instantiation runs through g. Existing minimal sets cannot shrink, so a
// second minimal set appears iff some new candidate misses the old set.
Scan scan_after_adding(const Reasoner& before, const Reasoner& after, int max_len) {
  const std::size_t g = after.kb().size() - 1;
  Scan result = Scan::Ok;
  for_each_hypothesis(after.kb().n_terms(), [&](const Formula& h) {
    auto fresh = after.candidates(h, g);
    if (fresh.empty()) return true;
    auto old = before.derivable(h) ? before.minimal_sets(h) : std::vector<Reasoner::Candidate>{};
    if (!old.empty()) {
      for (const auto& c : fresh)
        if (!old.front().premises.is_subset_of(c.premises)) {
          result = Scan::Redundant;
          return false;
        }
      return true;
    }
    auto sets = after.minimal_sets(h);
    if (sets.size() != 1) {
      result = Scan::Redundant;
      return false;
    }
    if (max_len >= 0 && after.length_of(sets.front().premises) > max_len) {
      result = Scan::TooLong;
      return false;
    }
    return true;
  });
  return result;
}

}  // namespace

bool check_nonredundant(const KnowledgeBase& kb) { return scan(kb, -1) == Scan::Ok; }

bool add_existential_edges(KnowledgeBase& kb, const GenConfig& cfg, Rng& rng, int n_e, int n_i,
                           int n_o) {
  std::vector<Formula> pool;
  const auto n = static_cast<TermId>(kb.n_terms());
  for (auto q : {Quantifier::E, Quantifier::I, Quantifier::O})
    for (TermId x = 0; x < n; ++x)
      for (TermId y = is_symmetric(q) ? x + 1 : 0; y < n; ++y)
        if (x != y) pool.push_back({q, x, y});
  rng.shuffle(pool);

  int want[3] = {n_e, n_i, n_o};
  auto slot = [](Quantifier q) { return q == Quantifier::E ? 0 : q == Quantifier::I ? 1 : 2; };
  int remaining = n_e + n_i + n_o;
  auto current = std::make_unique<Reasoner>(kb);
  for (const auto& g : pool) {
    if (remaining == 0) break;
    if (want[slot(g.q)] == 0) continue;
    auto next = std::make_unique<KnowledgeBase>(kb.with_premise(g));
    auto next_r = std::make_unique<Reasoner>(*next);
    if (!next_r->consistent()) continue;
    if (scan_after_adding(*current, *next_r, cfg.max_inference_len) != Scan::Ok) continue;
    kb = std::move(*next);
    current = std::make_unique<Reasoner>(kb);
    --want[slot(g.q)];
    --remaining;
  }
  return remaining == 0;
}

std::string kb_id(Purpose p, std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return std::string(to_string(p)) + "-" + digits;
}

KbStream::KbStream(GenConfig cfg, Purpose purpose) : cfg_(cfg), purpose_(purpose) {
  cfg_.validate();
}

KnowledgeBase KbStream::next() {
  for (int tries = 0; tries < cfg_.max_attempts; ++tries) {
    const std::uint64_t attempt = report_.attempts++;
    Rng rng(derive_seed(cfg_.seed, "kb", static_cast<std::uint64_t>(purpose_), attempt));

    const int n_trees = rng.uniform_int(cfg_.n_trees.lo, cfg_.n_trees.hi);
    const int n_e = rng.uniform_int(cfg_.n_e.lo, cfg_.n_e.hi);
    const int n_i = rng.uniform_int(cfg_.n_i.lo, cfg_.n_i.hi);
    const int n_o = rng.uniform_int(cfg_.n_o.lo, cfg_.n_o.hi);
    const int total = rng.uniform_int(cfg_.target_premises.lo, cfg_.target_premises.hi);
    const int n_a = total - n_e - n_i - n_o;
    if (n_a < n_trees * (cfg_.min_tree_size - 1)) {
      ++report_.rejected_quota;
      continue;
    }

    KnowledgeBase kb;
    try {
      kb = gen_backbone(cfg_, rng, n_a, n_trees);
    } catch (const GenerationError&) {
      ++report_.rejected_quota;
      continue;
    }
    if (!add_existential_edges(kb, cfg_, rng, n_e, n_i, n_o)) {
      ++report_.rejected_quota;
      continue;
    }

    // Hide the construction order from term ids.
    std::vector<TermId> relabel(kb.n_terms());
    std::iota(relabel.begin(), relabel.end(), TermId{0});
    rng.shuffle(relabel);
    std::vector<Formula> premises;
    for (const auto& f : kb.premises()) premises.push_back({f.q, relabel[f.subj], relabel[f.obj]});
    KnowledgeBase out(kb_id(purpose_, report_.emitted), kb.n_terms(), std::move(premises));

    // Independent final validation of the emitted KB.
    bool ok_consistent = consistent_syntactic(out);
    if (ok_consistent && out.n_terms() <= OracleOptions{}.max_terms)
      ok_consistent =
          consistent_semantic(out, ModelBound{completeness_bound(out.n_terms(), out.premises())});
    if (!ok_consistent) {
      ++report_.rejected_consistency;
      continue;
    }
    if (!is_a_forest(out) || scan(out, cfg_.max_inference_len) != Scan::Ok) {
      ++report_.rejected_redundancy;
      continue;
    }
    if (!cfg_.target_premises.contains(static_cast<int>(out.size()))) {
      ++report_.rejected_quota;
      continue;
    }
    ++report_.emitted;
    ++report_.premise_histogram[static_cast<int>(out.size())];
    return out;
  }
  throw GenerationError("no valid knowledge base after " + std::to_string(cfg_.max_attempts) +
                        " consecutive attempts");
}

std::vector<KnowledgeBase> gen_kbs(const GenConfig& cfg, std::size_t count, Purpose purpose,
                                   GenReport* report) {
  KbStream stream(cfg, purpose);
  std::vector<KnowledgeBase> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(stream.next());
  if (report) *report += stream.report();
  return out;
}

}  // namespace syllo
