#include "syllo/formula.hpp"

#include <algorithm>
#include <utility>

#include "syllo/errors.hpp"

namespace syllo {

char to_char(Quantifier q) {
  switch (q) {
    case Quantifier::A: return 'A';
    case Quantifier::E: return 'E';
    case Quantifier::I: return 'I';
    case Quantifier::O: return 'O';
  }
  return '?';
}

std::optional<Quantifier> quantifier_from_char(char c) {
  switch (c) {
    case 'A': return Quantifier::A;
    case 'E': return Quantifier::E;
    case 'I': return Quantifier::I;
    case 'O': return Quantifier::O;
    default: return std::nullopt;
  }
}

Formula negate(const Formula& f) {
  Formula out = f;
  switch (f.q) {
    case Quantifier::A: out.q = Quantifier::O; break;
    case Quantifier::O: out.q = Quantifier::A; break;
    case Quantifier::E: out.q = Quantifier::I; break;
    case Quantifier::I: out.q = Quantifier::E; break;
  }
  return out;
}

Formula canonical(const Formula& f) {
  if (is_symmetric(f.q) && f.obj < f.subj) return Formula{f.q, f.obj, f.subj};
  return f;
}

std::string to_string(const Formula& f) {
  return std::string(1, to_char(f.q)) + "(" + std::to_string(f.subj) + "," + std::to_string(f.obj) +
         ")";
}

KnowledgeBase::KnowledgeBase(std::string id, std::size_t n_terms, std::vector<Formula> premises)
    : id_(std::move(id)), n_terms_(n_terms), premises_(std::move(premises)) {
  if (premises_.size() > PremiseSet::kCapacity)
    throw InputError("knowledge base " + id_ + " has " + std::to_string(premises_.size()) +
                     " premises; at most " + std::to_string(PremiseSet::kCapacity) + " supported");
  for (const auto& f : premises_) {
    if (f.subj >= n_terms_ || f.obj >= n_terms_)
      throw InputError("premise " + to_string(f) + " references a term outside [0, " +
                       std::to_string(n_terms_) + ")");
    if (f.subj == f.obj) throw InputError("reflexive premise " + to_string(f) + " not accepted");
  }
}

std::optional<std::size_t> KnowledgeBase::index_of(const Formula& f) const {
  auto it = std::find(premises_.begin(), premises_.end(), f);
  if (it == premises_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - premises_.begin());
}

std::size_t KnowledgeBase::count(Quantifier q) const {
  return static_cast<std::size_t>(
      std::count_if(premises_.begin(), premises_.end(), [q](const Formula& f) { return f.q == q; }));
}

KnowledgeBase KnowledgeBase::with_premise(const Formula& f) const {
  auto premises = premises_;
  premises.push_back(f);
  return KnowledgeBase(id_, n_terms_, std::move(premises));
}

KnowledgeBase KnowledgeBase::restricted_to(const PremiseSet& keep) const {
  std::vector<Formula> premises;
  for (auto i : keep.indices())
    if (i < premises_.size()) premises.push_back(premises_[i]);
  return KnowledgeBase(id_, n_terms_, std::move(premises));
}

}  // namespace syllo
