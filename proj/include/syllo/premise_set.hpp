#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace syllo {

// Fixed-capacity set of premise indices. Knowledge bases are bounded by
// kCapacity premises so that sets stay allocation-free in the hot loops of
// the reasoner and the generator.
class PremiseSet {
 public:
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kCapacity = kWords * 64;

  PremiseSet() = default;
  PremiseSet(std::initializer_list<std::size_t> indices) {
    for (auto i : indices) insert(i);
  }

  void insert(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  [[nodiscard]] bool contains(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  [[nodiscard]] bool is_subset_of(const PremiseSet& other) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }
  [[nodiscard]] bool is_proper_subset_of(const PremiseSet& other) const {
    return is_subset_of(other) && *this != other;
  }

  PremiseSet& operator|=(const PremiseSet& other) {
    for (std::size_t k = 0; k < kWords; ++k) words_[k] |= other.words_[k];
    return *this;
  }
  friend PremiseSet operator|(PremiseSet a, const PremiseSet& b) { return a |= b; }

  // Ascending indices.
  [[nodiscard]] std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < kWords; ++k) {
      auto w = words_[k];
      while (w != 0) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const PremiseSet&, const PremiseSet&) = default;
  friend auto operator<=>(const PremiseSet&, const PremiseSet&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace syllo
