#pragma once

#include <variant>
#include <vector>

#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// λ·a = a added to itself λ times, for K = Z(m).
struct NaturalAction {};

/// Row-major table: entry [λ * |R| + a] is the index of λ·a in R.
struct ExplicitAction {
  std::vector<Index> table;
};

using ActionSpec = std::variant<NaturalAction, ExplicitAction>;

/// A ring R that is a *-algebra over a commutative unital *-ring K. All
/// algebra axioms are checked exhaustively when the object is built.
class ScalarAlgebra {
 public:
  const StarRing& ring() const noexcept { return ring_; }
  const StarRing& scalars() const noexcept { return scalars_; }

  Index act(Index lambda, Index a) const { return action_[std::size_t{lambda} * ring_.order() + a]; }

  /// λ·a = 0 implies λ = 0 or a = 0.
  bool torsion_free() const noexcept { return torsion_free_; }
  /// K has no zero divisors (and 1 != 0).
  bool scalars_domain() const noexcept { return scalars_domain_; }
  Index scalar_unity() const noexcept { return scalar_unity_; }

  std::string label() const { return ring_.label() + " over " + scalars_.label(); }

  friend ScalarAlgebra build_scalar_algebra(const StarRing&, const StarRing&, const ActionSpec&,
                                            const ScanOptions&);

 private:
  ScalarAlgebra(StarRing r, StarRing k) : ring_(std::move(r)), scalars_(std::move(k)) {}

  StarRing ring_;
  StarRing scalars_;
  std::vector<Index> action_;
  bool torsion_free_ = false;
  bool scalars_domain_ = false;
  Index scalar_unity_ = 0;
};

/// Throws ActionAxiomViolation(axiom, witness) or CharacteristicMismatch.
/// Witness tuples list scalar indices first, then ring indices.
ScalarAlgebra build_scalar_algebra(const StarRing& r, const StarRing& k, const ActionSpec& action,
                                   const ScanOptions& opts = {});

}  // namespace starlab
