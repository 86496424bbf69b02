#include "starlab/annihilators.hpp"

#include <algorithm>
#include <unordered_map>

#include "starlab/error.hpp"
#include "starlab/parallel.hpp"

namespace starlab {

std::string_view to_string(AnnihilatorKind kind) {
  switch (kind) {
    case AnnihilatorKind::RightOfSet: return "right-of-set";
    case AnnihilatorKind::LeftOfSet: return "left-of-set";
    case AnnihilatorKind::RightOfRightIdeal: return "right-of-right-ideal";
    case AnnihilatorKind::LeftOfLeftIdeal: return "left-of-left-ideal";
    case AnnihilatorKind::RightOfIdeal: return "right-of-ideal";
    case AnnihilatorKind::Intersection: return "intersection";
  }
  return "unknown";
}

std::string_view to_string(FamilyMode mode) {
  switch (mode) {
    case FamilyMode::Subset: return "subset";
    case FamilyMode::RightIdeal: return "right-ideal";
    case FamilyMode::TwoSidedIdeal: return "two-sided-ideal";
  }
  return "unknown";
}

AnnihilatorSet right_annihilator(const StarRing& r, std::span<const Index> subset) {
  if (subset.empty()) throw Error(ErrorCode::InvalidElement, "annihilator of an empty set");
  AnnihilatorSet out{Bitset(r.order()), AnnihilatorKind::RightOfSet, {subset.begin(), subset.end()}};
  for (Index a = 0; a < r.order(); ++a) {
    bool killed = true;
    for (auto s : subset) {
      if (r.mul(s, a) != StarRing::zero()) {
        killed = false;
        break;
      }
    }
    if (killed) out.elements.set(a);
  }
  return out;
}

AnnihilatorSet left_annihilator(const StarRing& r, std::span<const Index> subset) {
  if (subset.empty()) throw Error(ErrorCode::InvalidElement, "annihilator of an empty set");
  AnnihilatorSet out{Bitset(r.order()), AnnihilatorKind::LeftOfSet, {subset.begin(), subset.end()}};
  for (Index a = 0; a < r.order(); ++a) {
    bool killed = true;
    for (auto s : subset) {
      if (r.mul(a, s) != StarRing::zero()) {
        killed = false;
        break;
      }
    }
    if (killed) out.elements.set(a);
  }
  return out;
}

AnnihilatorCache::AnnihilatorCache(StarRing r, unsigned jobs)
    : ring_(std::move(r)), jobs_(jobs), right_(ring_.order()), left_(ring_.order()) {
  const std::size_t n = ring_.order();
  parallel_for(n, jobs_, [&](std::size_t i) {
    const auto x = static_cast<Index>(i);
    Bitset rx(n), lx(n);
    for (Index y = 0; y < n; ++y) {
      if (ring_.mul(x, y) == StarRing::zero()) rx.set(y);
      if (ring_.mul(y, x) == StarRing::zero()) lx.set(y);
    }
    right_[x] = std::move(rx);
    left_[x] = std::move(lx);
  });
}

Bitset AnnihilatorCache::right_multiples(Index e) const {
  Bitset out(ring_.order());
  for (Index y = 0; y < ring_.order(); ++y) out.set(ring_.mul(e, y));
  return out;
}

Bitset AnnihilatorCache::left_multiples(Index f) const {
  Bitset out(ring_.order());
  for (Index y = 0; y < ring_.order(); ++y) out.set(ring_.mul(y, f));
  return out;
}

const std::vector<Bitset>& AnnihilatorCache::right_of_right_ideals() {
  if (right_of_right_ideal_.empty()) {
    const std::size_t n = ring_.order();
    std::vector<Bitset> out(n);
    // r(aR) is the intersection of r({z}) over z in aR
    parallel_for(n, jobs_, [&](std::size_t i) {
      const Bitset products = right_multiples(static_cast<Index>(i));
      Bitset acc(n, true);
      for (auto z : products.members()) acc &= right_[z];
      out[i] = std::move(acc);
    });
    right_of_right_ideal_ = std::move(out);
  }
  return right_of_right_ideal_;
}

const std::vector<Bitset>& AnnihilatorCache::left_of_left_ideals() {
  if (left_of_left_ideal_.empty()) {
    const std::size_t n = ring_.order();
    std::vector<Bitset> out(n);
    parallel_for(n, jobs_, [&](std::size_t i) {
      const Bitset products = left_multiples(static_cast<Index>(i));
      Bitset acc(n, true);
      for (auto z : products.members()) acc &= left_[z];
      out[i] = std::move(acc);
    });
    left_of_left_ideal_ = std::move(out);
  }
  return left_of_left_ideal_;
}

const std::vector<Bitset>& AnnihilatorCache::right_of_ideals() {
  if (right_of_ideal_.empty()) {
    const auto& rr = right_of_right_ideals();
    const std::size_t n = ring_.order();
    std::vector<Bitset> out(n);
    // (a) is additively generated by a, aR, Ra and RaR, so
    // r((a)) = r(a) ∩ r(aR) ∩ r(Ra) ∩ (∩_{z in Ra} r(zR)).
    parallel_for(n, jobs_, [&](std::size_t i) {
      const auto a = static_cast<Index>(i);
      Bitset acc = right_[a];
      acc &= rr[a];
      for (auto z : left_multiples(a).members()) {
        acc &= right_[z];
        acc &= rr[z];
      }
      out[i] = std::move(acc);
    });
    right_of_ideal_ = std::move(out);
  }
  return right_of_ideal_;
}

AnnihilatorFamily annihilator_family(AnnihilatorCache& cache, FamilyMode mode, const Limits& limits) {
  const StarRing& r = cache.ring();
  AnnihilatorFamily family;
  family.mode = mode;

  const std::vector<Bitset>* principal = nullptr;
  AnnihilatorKind kind = AnnihilatorKind::RightOfSet;
  std::vector<Bitset> singles;
  switch (mode) {
    case FamilyMode::Subset:
      singles.reserve(r.order());
      for (Index a = 0; a < r.order(); ++a) singles.push_back(cache.right(a));
      principal = &singles;
      break;
    case FamilyMode::RightIdeal:
      principal = &cache.right_of_right_ideals();
      kind = AnnihilatorKind::RightOfRightIdeal;
      break;
    case FamilyMode::TwoSidedIdeal:
      principal = &cache.right_of_ideals();
      kind = AnnihilatorKind::RightOfIdeal;
      break;
  }

  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  auto admit = [&](Bitset set, AnnihilatorKind k, std::vector<Index> gens) {
    if (seen.contains(set)) return;
    if (family.members.size() >= limits.family_cap) {
      throw Error(ErrorCode::FamilyCapExceeded,
                  "annihilator family of " + r.label() + " exceeds " + std::to_string(limits.family_cap) + " sets");
    }
    seen.emplace(set, family.members.size());
    family.members.push_back({std::move(set), k, std::move(gens)});
  };

  for (Index a = 0; a < r.order(); ++a) admit((*principal)[a], kind, {a});

  for (std::size_t i = 1; i < family.members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Bitset meet = family.members[i].elements & family.members[j].elements;
      if (seen.contains(meet)) continue;
      std::vector<Index> gens = family.members[i].generators;
      gens.insert(gens.end(), family.members[j].generators.begin(), family.members[j].generators.end());
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      admit(std::move(meet), AnnihilatorKind::Intersection, std::move(gens));
    }
  }
  return family;
}

AnnihilatorFamily annihilator_family(const StarRing& r, FamilyMode mode, const ScanOptions& opts) {
  AnnihilatorCache cache(r, opts.jobs);
  return annihilator_family(cache, mode, opts.limits);
}

}  // namespace starlab
