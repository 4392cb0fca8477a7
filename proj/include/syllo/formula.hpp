#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syllo/premise_set.hpp"

namespace syllo {

// Abstract node identifier; dense in [0, n_terms) within a knowledge base.
using TermId = std::uint32_t;

enum class Quantifier : std::uint8_t { A, E, I, O };

constexpr bool is_symmetric(Quantifier q) { return q == Quantifier::E || q == Quantifier::I; }
constexpr bool is_universal(Quantifier q) { return q == Quantifier::A || q == Quantifier::E; }

char to_char(Quantifier q);
std::optional<Quantifier> quantifier_from_char(char c);

struct Formula {
  Quantifier q = Quantifier::A;
  TermId subj = 0;
  TermId obj = 0;

  friend bool operator==(const Formula&, const Formula&) = default;
  friend auto operator<=>(const Formula&, const Formula&) = default;
};

// A <-> O and E <-> I, same subject and object.
Formula negate(const Formula& f);

// E and I formulas oriented with the lower term id first; A and O unchanged.
Formula canonical(const Formula& f);

// Compact debug form, e.g. "A(3,5)".
std::string to_string(const Formula& f);

// Ordered premise list over n_terms abstract terms. Construction validates
// term ranges and rejects reflexive formulas; consistency and non-redundancy
// are properties checked by the reasoner, not by this type.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::string id, std::size_t n_terms, std::vector<Formula> premises);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] std::size_t n_terms() const { return n_terms_; }
  [[nodiscard]] const std::vector<Formula>& premises() const { return premises_; }
  [[nodiscard]] std::size_t size() const { return premises_.size(); }
  [[nodiscard]] const Formula& operator[](std::size_t i) const { return premises_[i]; }

  [[nodiscard]] std::optional<std::size_t> index_of(const Formula& f) const;
  [[nodiscard]] std::size_t count(Quantifier q) const;

  // Copy with one more premise appended.
  [[nodiscard]] KnowledgeBase with_premise(const Formula& f) const;
  // Copy restricted to the given premise indices, in KB order.
  [[nodiscard]] KnowledgeBase restricted_to(const PremiseSet& keep) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  std::string id_;
  std::size_t n_terms_ = 0;
  std::vector<Formula> premises_;
};

}  // namespace syllo
