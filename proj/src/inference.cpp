#include "syllo/inference.hpp"

#include <algorithm>
#include <string>

#include "syllo/errors.hpp"

namespace syllo {

std::vector<MinimalInference> enumerate_inferences(const KnowledgeBase& kb) {
  Reasoner r(kb);
  if (!r.consistent()) throw InconsistentKbError("knowledge base " + kb.id() + " is inconsistent");
  std::vector<MinimalInference> out;
  const auto n = static_cast<TermId>(kb.n_terms());
  for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
    for (TermId x = 0; x < n; ++x)
      for (TermId y = is_symmetric(q) ? x + 1 : 0; y < n; ++y) {
        if (x == y) continue;
        const Formula h{q, x, y};
        if (!r.derivable(h)) continue;
        auto sets = r.minimal_sets(h);
        if (sets.size() != 1)
          throw RedundancyError("hypothesis " + to_string(h) + " has " + std::to_string(sets.size()) +
                                " minimal premise sets in knowledge base " + kb.id());
        out.push_back({sets[0].itype, h, sets[0].premises, r.length_of(sets[0].premises)});
      }
  return out;
}

int classify(const KnowledgeBase& kb, const MinimalInference& inf) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (auto i : inf.premises.indices()) {
    if (i >= kb.size()) throw InternalError("premise index out of range in classify");
    ++counts[static_cast<int>(kb[i].q)];
  }
  const std::size_t e = counts[1], i = counts[2], o = counts[3];
  int row = 0;
  switch (inf.conclusion.q) {
    case Quantifier::A: row = (e + i + o == 0) ? 2 : 0; break;
    case Quantifier::E: row = (e == 1 && i + o == 0) ? 6 : 0; break;
    case Quantifier::I:
      if (e + i + o == 0) row = 4;
      else if (i == 1 && e + o == 0) row = 7;
      break;
    case Quantifier::O:
      if (o == 1 && e + i == 0) row = 1;
      else if (e == 1 && i + o == 0) row = 3;
      else if (e == 1 && i == 1 && o == 0) row = 5;
      break;
  }
  if (row == 0)
    throw InternalError("no inference type matches " + to_string(inf.conclusion) + " in " + kb.id());
  // The sub-KB of exactly these premises must produce them, with this row,
  // as its only minimal set.
  const KnowledgeBase sub = kb.restricted_to(inf.premises);
  Reasoner r(sub);
  auto sets = r.minimal_sets(inf.conclusion);
  PremiseSet all;
  for (std::size_t k = 0; k < sub.size(); ++k) all.insert(k);
  if (sets.size() != 1 || sets[0].premises != all || sets[0].itype != row)
    throw InternalError("premises do not form a type-" + std::to_string(row) + " inference for " +
                        to_string(inf.conclusion) + " in " + kb.id());
  return row;
}

void TypeLengthGrid::add(int itype, int length, std::uint64_t n) {
  if (itype < 1 || itype > kNumTypes || length < 0)
    throw InputError("grid cell out of range: type " + std::to_string(itype) + ", length " +
                     std::to_string(length));
  const auto t = static_cast<std::size_t>(itype - 1);
  if (length > kMaxGridLength) {
    min_overflow_len_[t] = overflow_[t] == 0 ? length : std::min(min_overflow_len_[t], length);
    overflow_[t] += n;
    max_overflow_len_[t] = std::max(max_overflow_len_[t], length);
  } else {
    counts_[t][static_cast<std::size_t>(length)] += n;
  }
}

void TypeLengthGrid::add_kb(const KnowledgeBase& kb) {
  for (const auto& inf : enumerate_inferences(kb)) add(inf);
}

TypeLengthGrid& TypeLengthGrid::operator+=(const TypeLengthGrid& o) {
  for (std::size_t t = 0; t < kNumTypes; ++t) {
    for (std::size_t l = 0; l <= kMaxGridLength; ++l) counts_[t][l] += o.counts_[t][l];
    if (o.overflow_[t] > 0)
      min_overflow_len_[t] = overflow_[t] == 0 ? o.min_overflow_len_[t]
                                               : std::min(min_overflow_len_[t], o.min_overflow_len_[t]);
    overflow_[t] += o.overflow_[t];
    max_overflow_len_[t] = std::max(max_overflow_len_[t], o.max_overflow_len_[t]);
  }
  return *this;
}

std::uint64_t TypeLengthGrid::at(int itype, int length) const {
  if (itype < 1 || itype > kNumTypes || length < 0 || length > kMaxGridLength) return 0;
  return counts_[static_cast<std::size_t>(itype - 1)][static_cast<std::size_t>(length)];
}

std::uint64_t TypeLengthGrid::overflow(int itype) const {
  if (itype < 1 || itype > kNumTypes) return 0;
  return overflow_[static_cast<std::size_t>(itype - 1)];
}

std::uint64_t TypeLengthGrid::total() const {
  std::uint64_t n = 0;
  for (std::size_t t = 0; t < kNumTypes; ++t) {
    for (auto c : counts_[t]) n += c;
    n += overflow_[t];
  }
  return n;
}

std::vector<LengthRange> TypeLengthGrid::length_ranges() const {
  std::vector<LengthRange> out;
  for (int t = 1; t <= kNumTypes; ++t) {
    int lo = -1, hi = -1;
    for (int l = 0; l <= kMaxGridLength; ++l)
      if (at(t, l) > 0) {
        if (lo < 0) lo = l;
        hi = l;
      }
    if (overflow(t) > 0) {
      if (lo < 0) lo = min_overflow_len_[static_cast<std::size_t>(t - 1)];
      hi = max_overflow_len_[static_cast<std::size_t>(t - 1)];
    }
    if (lo >= 0) out.push_back({t, lo, hi});
  }
  return out;
}

}  // namespace syllo
