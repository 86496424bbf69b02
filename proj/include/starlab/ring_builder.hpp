#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "starlab/descriptor.hpp"
#include "starlab/report.hpp"
#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// Deterministic construction from a descriptor. Index orders:
///   Z(m)       residues 0..m-1
///   M(n,Z(m))  row-major entries read as base-m digits, first entry least significant
///   prod(L,R)  left_index * |R| + right_index
///   sub(P;..)  surviving parent indices in ascending order
/// Throws OrderCapExceeded, InvalidElement, or AxiomViolation (guard only).
StarRing build_ring(const RingDescriptor& d, const Limits& limits = {});

/// Smallest subset of `parent` containing `generators` and 0 that is closed
/// under +, -, * and the involution. Returned as sorted parent indices.
std::vector<Index> subring_closure(const StarRing& parent, std::span<const Index> generators);

/// Exhaustive audit of the abelian group, ring, and involution axioms. On
/// failure `detail` names the axiom and `witness` holds the offending tuple.
PropertyReport validate_star_ring(const StarRing& r, const ScanOptions& opts = {});

/// Least k >= 1 with k·x = 0 for every x.
std::uint64_t characteristic(const StarRing& r);

}  // namespace starlab
