#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syllo/formula.hpp"
#include "syllo/premise_set.hpp"

namespace syllo {

// Number of minimal syllogistic inference patterns.
inline constexpr int kNumTypes = 7;

struct MinimalInference {
  int itype = 0;         // 1..7
  Formula conclusion{};  // E/I in canonical orientation when produced by enumeration
  PremiseSet premises;   // indices into the KB premise list
  int length = 0;        // number of A-formulas among the premises

  friend bool operator==(const MinimalInference&, const MinimalInference&) = default;
};

// Precomputed view of one knowledge base: the A-graph, its reflexive
// transitive closure, and the E/I/O premise lists. Derivability is the
// closure of the seven inference patterns, each A-chain read as a (possibly
// empty) directed path in the A-graph:
//
//   1  {Aa-b, Ac-d, Oad}            => Obc
//   2  {Aa-b}                       => Aab
//   3  {Aa-b, Ac-d, Aa-e, Ede}      => Obc
//   4  {Aa-b, Aa-c}                 => Ibc
//   5  {Aa-b, Ac-d, Ae-f, Iae, Edf} => Obc
//   6  {Aa-b, Ac-d, Ebd}            => Eac
//   7  {Aa-b, Ac-d, Iac}            => Ibd
//
// E and I premises match in both orientations. The view keeps a pointer to
// the knowledge base, which must outlive it.
class Reasoner {
 public:
  struct Candidate {
    PremiseSet premises;
    int itype = 0;
  };

  explicit Reasoner(const KnowledgeBase& kb);

  [[nodiscard]] const KnowledgeBase& kb() const { return *kb_; }

  // Reflexive: a term reaches itself through the empty chain.
  [[nodiscard]] bool a_reachable(TermId x, TermId y) const;

  // Every simple A-path from `from` to `to`, as premise sets. A single empty
  // set when from == to; empty when unreachable.
  [[nodiscard]] std::vector<PremiseSet> a_chains(TermId from, TermId to) const;

  // Pattern-closure derivability. Does not check consistency.
  [[nodiscard]] bool derivable(const Formula& h) const;

  // Absence of any antilogism instance.
  [[nodiscard]] bool consistent() const;

  // Every pattern instantiation concluding h (duplicates possible). With
  // `through` set, only instantiations that use that E/I/O premise.
  [[nodiscard]] std::vector<Candidate> candidates(
      const Formula& h, std::optional<std::size_t> through = std::nullopt) const;

  // The inclusion-minimal premise sets among the candidates, each labelled
  // with the lowest type number that produces exactly that set. Sorted by
  // premise set.
  [[nodiscard]] std::vector<Candidate> minimal_sets(const Formula& h) const;

  [[nodiscard]] int length_of(const PremiseSet& s) const;

 private:
  using Bits = std::vector<std::uint64_t>;

  [[nodiscard]] bool reach(TermId x, TermId y) const {
    return (reach_[x][y >> 6] >> (y & 63)) & 1U;
  }
  [[nodiscard]] bool common_ancestor(TermId x, TermId y) const;
  void check_term(TermId t) const;

  const KnowledgeBase* kb_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::pair<TermId, std::size_t>>> a_out_;  // (target, premise index)
  std::vector<Bits> reach_;      // reach_[x] has y iff x reaches y
  std::vector<Bits> ancestors_;  // ancestors_[y] has x iff x reaches y
  std::vector<std::size_t> e_idx_, i_idx_, o_idx_;
};

// true iff x == y or a directed A-path x -> y exists.
bool a_reachable(const KnowledgeBase& kb, TermId x, TermId y);

// Throws InconsistentKbError on an inconsistent KB and InputError on a
// reflexive or out-of-range hypothesis.
bool entails(const KnowledgeBase& kb, const Formula& h);

// The unique minimal premise subset for h, or nullopt when h is not
// entailed. Throws RedundancyError when several minimal subsets exist.
std::optional<MinimalInference> minimal_premises(const KnowledgeBase& kb, const Formula& h);

// Every minimal premise subset for h (any number), with type and length.
std::vector<MinimalInference> all_minimal_premises(const KnowledgeBase& kb, const Formula& h);

bool consistent_syntactic(const KnowledgeBase& kb);

}  // namespace syllo
