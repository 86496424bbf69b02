#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "starlab/types.hpp"

namespace starlab {

/// Runtime-sized set of element indices, packed 64 per word.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size, bool filled = false);

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool all() const noexcept { return count() == size_; }

  /// Every member of *this is also in `other`.
  bool is_subset_of(const Bitset& other) const noexcept;

  Bitset& operator&=(const Bitset& other) noexcept;
  Bitset& operator|=(const Bitset& other) noexcept;
  friend Bitset operator&(Bitset lhs, const Bitset& rhs) noexcept { return lhs &= rhs; }

  /// Members in ascending order.
  std::vector<Index> members() const;

  std::size_t hash() const noexcept;

  bool operator==(const Bitset& other) const noexcept = default;

 private:
  void clear_tail() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace starlab
