#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "syllo/formula.hpp"
#include "syllo/logic.hpp"

namespace syllo {

inline constexpr int kMaxGridLength = 19;

// Every derivable non-reflexive hypothesis of a consistent, non-redundant KB
// with its unique minimal premise set. E/I conclusions are canonical
// (lower term id first), so each hypothesis appears once. Order: by
// quantifier A, E, I, O, then subject, then object. Throws
// InconsistentKbError or RedundancyError.
std::vector<MinimalInference> enumerate_inferences(const KnowledgeBase& kb);

// Table row of an inference, read from its premise composition and the
// conclusion's quantifier, then confirmed by re-deriving the conclusion from
// exactly those premises. Throws InternalError when nothing matches.
int classify(const KnowledgeBase& kb, const MinimalInference& inf);

struct LengthRange {
  int itype = 0;
  int min_len = 0;  // sigma(t)
  int max_len = 0;  // mu(t)

  friend bool operator==(const LengthRange&, const LengthRange&) = default;
};

// Counts per (type 1..7, length 0..19). Longer inferences are kept in a
// per-type overflow counter instead of the grid.
class TypeLengthGrid {
 public:
  void add(int itype, int length, std::uint64_t n = 1);
  void add(const MinimalInference& inf) { add(inf.itype, inf.length); }
  void add_kb(const KnowledgeBase& kb);
  TypeLengthGrid& operator+=(const TypeLengthGrid& other);

  [[nodiscard]] std::uint64_t at(int itype, int length) const;
  [[nodiscard]] std::uint64_t overflow(int itype) const;
  [[nodiscard]] std::uint64_t total() const;

  // Observed min/max length per type that has any count (overflow
  // included in the max).
  [[nodiscard]] std::vector<LengthRange> length_ranges() const;

  friend bool operator==(const TypeLengthGrid&, const TypeLengthGrid&) = default;

 private:
  std::array<std::array<std::uint64_t, kMaxGridLength + 1>, kNumTypes> counts_{};
  std::array<std::uint64_t, kNumTypes> overflow_{};
  std::array<int, kNumTypes> min_overflow_len_{};
  std::array<int, kNumTypes> max_overflow_len_{};
};

}  // namespace syllo
