#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "syllo/formula.hpp"
#include "syllo/premise_set.hpp"

namespace syllo {

// A finite structure: universe {0, .., universe_size-1} and one extent per
// term, stored as a bitmask over the universe (so universe_size <= 64).
struct Interpretation {
  std::size_t universe_size = 0;
  std::vector<std::uint64_t> extents;
};

struct ModelBound {
  std::size_t max_universe = 1;
};

struct OracleOptions {
  // Instances above this many terms are refused. Raising it past
  // kOracleHardTermCap is an input error.
  std::size_t max_terms = 8;
};

inline constexpr std::size_t kOracleHardTermCap = 20;

// First-order truth of f in m. Terms of f must be within m.
bool satisfies(const Interpretation& m, const Formula& f);

// n_terms + #I + #O: one inhabitant per term, one witness per existential.
std::size_t completeness_bound(std::size_t n_terms, std::span<const Formula> formulas);

// A model of size at most bound.max_universe in which every term is
// non-empty, or nullopt when none exists. The search works on element
// "profiles" (the set of terms an element belongs to): a model exists iff
// each existential requirement is witnessed by a profile allowed by all
// universal formulas. Throws BoundError when the bound is below
// completeness_bound and InputError when the instance is too large.
std::optional<Interpretation> find_model(std::size_t n_terms, std::span<const Formula> formulas,
                                         ModelBound bound, const OracleOptions& opts = {});

bool consistent_semantic(const KnowledgeBase& kb, ModelBound bound, const OracleOptions& opts = {});

// Refutation: premises entail h iff premises + negate(h) has no model.
bool entails_semantic(std::size_t n_terms, std::span<const Formula> premises, const Formula& h,
                      ModelBound bound, const OracleOptions& opts = {});
bool entails_semantic(const KnowledgeBase& kb, const Formula& h, ModelBound bound,
                      const OracleOptions& opts = {});

// Smallest bound accepted by entails_semantic for these inputs.
std::size_t entailment_bound(std::size_t n_terms, std::span<const Formula> premises,
                             const Formula& h);

// Every inclusion-minimal premise subset that semantically entails h, by
// enumeration of all 2^|kb| subsets (at most 20 premises). Each subset is
// checked at its own completeness bound.
std::vector<PremiseSet> minimal_premise_sets_semantic(const KnowledgeBase& kb, const Formula& h,
                                                      const OracleOptions& opts = {});

// Plain enumeration of every structure with exactly universe_size elements
// (as multisets of element profiles, in lexicographic order). Independent of
// the profile-witness argument; meant for tiny instances only.
bool exists_model_exhaustive(std::size_t n_terms, std::span<const Formula> formulas,
                             std::size_t universe_size);

// Direct definition: h holds in every structure of size 1..max_universe
// satisfying the premises.
bool entails_exhaustive(std::size_t n_terms, std::span<const Formula> premises, const Formula& h,
                        std::size_t max_universe);

}  // namespace syllo
