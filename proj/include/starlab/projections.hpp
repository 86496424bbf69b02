#pragma once

#include <optional>
#include <span>
#include <vector>

#include "starlab/bitset.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// Self-adjoint idempotent e = e* = e².
struct Projection {
  Index element = 0;
  bool central = false;

  bool operator==(const Projection&) const = default;
};

/// All projections of a ring in ascending element order, with e <= f iff ef = e.
class ProjectionPoset {
 public:
  explicit ProjectionPoset(const StarRing& r, unsigned jobs = 1);

  const std::vector<Projection>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  Index element(std::size_t pos) const { return items_[pos].element; }

  /// items()[i] <= items()[j]
  bool leq(std::size_t i, std::size_t j) const { return order_[i * items_.size() + j] != 0; }
  bool leq_elements(Index e, Index f) const;

  /// Position of `e` in items(), if e is a projection.
  std::optional<std::size_t> position(Index e) const;

  /// Least / greatest element of the positions flagged in `subset`, if one exists.
  std::optional<std::size_t> least(const std::vector<bool>& subset) const;
  std::optional<std::size_t> greatest(const std::vector<bool>& subset) const;

  std::vector<Index> central_elements() const;

 private:
  std::vector<Projection> items_;
  std::vector<std::uint8_t> order_;
};

/// Result of a right/left projection search: every projection meeting the
/// defining conditions. Exactly one candidate means the projection exists.
struct ProjectionLookup {
  std::vector<Index> candidates;

  bool found() const noexcept { return candidates.size() == 1; }
  std::optional<Index> value() const {
    return found() ? std::optional<Index>(candidates.front()) : std::nullopt;
  }
};

/// Projection poset plus the annihilators of each projection, shared by the
/// RP/LP/central-cover searches on one ring.
class ProjectionAnalysis {
 public:
  explicit ProjectionAnalysis(StarRing r, unsigned jobs = 1);

  const StarRing& ring() const noexcept { return ring_; }
  const ProjectionPoset& poset() const noexcept { return poset_; }

  /// Projections e with xe = x and (xy = 0 implies ey = 0).
  ProjectionLookup find_rp(Index x) const;
  /// Projections e with ex = x and (yx = 0 implies ye = 0).
  ProjectionLookup find_lp(Index x) const;
  /// Central projections h with hx = x that lie below every other such h.
  std::optional<Index> find_central_cover(Index x) const;

  /// Throw NoRightProjection / AmbiguousRightProjection (witness: x, candidates...).
  Index rp(Index x) const;
  Index lp(Index x) const;
  /// RP(x*x); coincides with rp(x) when the involution is proper.
  Index rp_via_star(Index x) const;
  /// Throws NoCentralCover(x).
  Index central_cover(Index x) const;

 private:
  Bitset right_annihilator(Index x) const;
  Bitset left_annihilator(Index x) const;

  StarRing ring_;
  ProjectionPoset poset_;
  std::vector<Bitset> right_of_projection_;
  std::vector<Bitset> left_of_projection_;
  std::vector<std::size_t> central_positions_;
};

/// Convenience wrappers that build a ProjectionAnalysis per call.
ProjectionPoset projections(const StarRing& r);
Index rp(const StarRing& r, Index x);
Index lp(const StarRing& r, Index x);
Index rp_via_star(const StarRing& r, Index x);
Index central_cover(const StarRing& r, Index x);

/// Greatest projection g (central if `central_only`) with a·g = λ·g.
/// Throws NoGreatestElement with the candidate set as witness.
Index largest_eigen_projection(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis, Index a,
                               Index lambda, bool central_only);

/// One row of a condition (3) / condition (β) table.
struct ScaledBound {
  Index lambda = 0;
  Index bound = 0;
  /// False when the upper bounds have no least member and the lowest-index
  /// one was chosen instead.
  bool least = true;
};

struct ScaledBoundTable {
  std::vector<ScaledBound> bounds;
  /// (λ, x) where the set of upper bounds became empty.
  std::optional<std::pair<Index, Index>> failure;

  bool holds() const noexcept { return !failure.has_value(); }
  std::optional<Index> bound_for(Index lambda) const;
};

/// For each nonzero λ, a projection dominating LP(x) for every x with λx = 0.
/// LP lookup errors propagate.
ScaledBoundTable condition3_witnesses(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis);

/// As condition3_witnesses with LP replaced by the central cover.
ScaledBoundTable condition_beta_witnesses(const ScalarAlgebra& alg, const ProjectionAnalysis& analysis);

}  // namespace starlab
