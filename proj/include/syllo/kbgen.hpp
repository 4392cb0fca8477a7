#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "syllo/formula.hpp"
#include "syllo/rng.hpp"

namespace syllo {

enum class Purpose { Train, Val, Test };

std::string_view to_string(Purpose p);
Purpose purpose_from_string(std::string_view s);

struct IntRange {
  int lo = 0;
  int hi = 0;

  [[nodiscard]] bool contains(int v) const { return lo <= v && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct GenConfig {
  std::uint64_t seed = 0;
  IntRange n_trees{2, 3};
  // Smallest tree, counted in nodes.
  int min_tree_size = 2;
  // Longest root-to-leaf path in A-edges.
  int max_chain_len = 10;
  // Probability that a new node extends the most recently added node
  // instead of attaching uniformly; higher values give deeper trees.
  double chain_bias = 0.85;
  IntRange n_e{1, 1};
  IntRange n_i{1, 2};
  IntRange n_o{2, 4};
  IntRange target_premises{26, 35};
  // E/I/O edges whose addition would create a minimal inference longer
  // than this are refused. Negative disables the cap.
  int max_inference_len = 19;
  int max_attempts = 1000;

  // Defaults with the premise range used for each split.
  static GenConfig for_purpose(Purpose p, std::uint64_t seed);

  // Throws InputError on empty or unachievable ranges.
  void validate() const;
};

struct GenReport {
  std::uint64_t attempts = 0;
  std::uint64_t emitted = 0;
  std::uint64_t rejected_consistency = 0;
  std::uint64_t rejected_redundancy = 0;
  // Could not place the sampled number of E/I/O edges.
  std::uint64_t rejected_quota = 0;
  std::map<int, std::uint64_t> premise_histogram;

  GenReport& operator+=(const GenReport& other);
};

// Stage one: disjoint out-trees over fresh terms 0..n-1, A-edges only.
KnowledgeBase gen_backbone(const GenConfig& cfg, Rng& rng, int n_a_edges, int n_trees,
                           const std::string& id = "backbone");

// true iff every derivable non-reflexive hypothesis (E/I in canonical
// orientation) has exactly one minimal premise set. Expects a consistent KB.
bool check_nonredundant(const KnowledgeBase& kb);

// true iff every term has at most one incoming A-edge and the A-graph is
// acyclic, so any two terms are joined by at most one directed path.
bool is_a_forest(const KnowledgeBase& kb);

// Stage two: greedily appends E/I/O edges in random order until the given
// per-quantifier quotas are met. Returns false if a quota cannot be met.
bool add_existential_edges(KnowledgeBase& kb, const GenConfig& cfg, Rng& rng, int n_e, int n_i,
                           int n_o);

// Sequential, deterministic stream of KBs for one split. Attempt k draws from
// its own seed derived from (cfg.seed, purpose, k), so the stream is a pure
// function of (cfg, purpose) and asking for more KBs later extends the same
// sequence. Ids look like "train-000042".
class KbStream {
 public:
  KbStream(GenConfig cfg, Purpose purpose);

  // Throws GenerationError after cfg.max_attempts consecutive rejections.
  KnowledgeBase next();
  [[nodiscard]] const GenReport& report() const { return report_; }
  [[nodiscard]] Purpose purpose() const { return purpose_; }

 private:
  GenConfig cfg_;
  Purpose purpose_;
  GenReport report_;
};

// The first `count` KBs of the stream.
std::vector<KnowledgeBase> gen_kbs(const GenConfig& cfg, std::size_t count, Purpose purpose,
                                   GenReport* report = nullptr);

std::string kb_id(Purpose p, std::size_t index);

}  // namespace syllo
