#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "starlab/bitset.hpp"
#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

enum class AnnihilatorKind {
  RightOfSet,        // r(S)
  LeftOfSet,         // l(S)
  RightOfRightIdeal, // r(aR)
  LeftOfLeftIdeal,   // l(Ra)
  RightOfIdeal,      // r((a)), (a) the two-sided ideal generated by a
  Intersection,      // finite intersection of family members
};

std::string_view to_string(AnnihilatorKind kind);

struct AnnihilatorSet {
  Bitset elements;
  AnnihilatorKind provenance = AnnihilatorKind::RightOfSet;
  /// Elements whose principal annihilators intersect to `elements`.
  std::vector<Index> generators;
};

/// r(S) = {a : sa = 0 for all s in S}. S must be nonempty.
AnnihilatorSet right_annihilator(const StarRing& r, std::span<const Index> subset);
/// l(S) = {a : as = 0 for all s in S}.
AnnihilatorSet left_annihilator(const StarRing& r, std::span<const Index> subset);

/// Principal annihilators of every element, computed once per ring.
class AnnihilatorCache {
 public:
  explicit AnnihilatorCache(StarRing r, unsigned jobs = 1);

  const StarRing& ring() const noexcept { return ring_; }

  const Bitset& right(Index x) const { return right_[x]; }  // r({x})
  const Bitset& left(Index x) const { return left_[x]; }    // l({x})

  /// r(aR), l(Ra), r((a)) for every a; computed on first use.
  const std::vector<Bitset>& right_of_right_ideals();
  const std::vector<Bitset>& left_of_left_ideals();
  const std::vector<Bitset>& right_of_ideals();

  /// eR = {er : r in R} and Rf = {rf : r in R}.
  Bitset right_multiples(Index e) const;
  Bitset left_multiples(Index f) const;

 private:
  StarRing ring_;
  unsigned jobs_;
  std::vector<Bitset> right_;
  std::vector<Bitset> left_;
  std::vector<Bitset> right_of_right_ideal_;
  std::vector<Bitset> left_of_left_ideal_;
  std::vector<Bitset> right_of_ideal_;
};

enum class FamilyMode { Subset, RightIdeal, TwoSidedIdeal };

std::string_view to_string(FamilyMode mode);

struct AnnihilatorFamily {
  FamilyMode mode = FamilyMode::Subset;
  /// Distinct sets: principal ones first (ordered by first generating element),
  /// then intersections in discovery order.
  std::vector<AnnihilatorSet> members;
};

/// Intersection closure of the principal right annihilators r({a}), r(aR) or
/// r((a)). Throws FamilyCapExceeded beyond `limits.family_cap` sets.
AnnihilatorFamily annihilator_family(AnnihilatorCache& cache, FamilyMode mode, const Limits& limits = {});
AnnihilatorFamily annihilator_family(const StarRing& r, FamilyMode mode, const ScanOptions& opts = {});

}  // namespace starlab
