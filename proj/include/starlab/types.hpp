#pragma once

#include <cstddef>
#include <cstdint>

namespace starlab {

/// Position of an element in a ring's carrier. Index 0 is always the additive zero.
using Index = std::uint32_t;

/// Size guards shared by construction and scans.
struct Limits {
  std::size_t max_order = 10'000;
  /// Flat add/mul tables are materialized only when order^2 stays below this.
  std::size_t table_threshold = 4'000'000;
  /// Superquadratic classifiers log a warning above this order.
  std::size_t warn_order = 2'500;
  /// Upper bound on the number of distinct sets in an annihilator family.
  std::size_t family_cap = 4'096;
};

/// Worker count for element-range scans. Results never depend on it.
struct ScanOptions {
  unsigned jobs = 1;
  Limits limits{};
};

}  // namespace starlab
