#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "starlab/annihilators.hpp"
#include "starlab/descriptor.hpp"
#include "starlab/projections.hpp"
#include "starlab/report.hpp"
#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// Decides class membership of one ring with witnesses. Shared scans
/// (projections, annihilators) are computed once and reused; reports are
/// memoized per property. Not thread-safe; scans inside are parallel.
class Classifier {
 public:
  explicit Classifier(StarRing r, ScanOptions opts = {});

  const StarRing& ring() const noexcept { return ring_; }

  PropertyReport proper_involution();    // x*x = 0 implies x = 0
  PropertyReport semi_proper();          // aRa* = 0 implies a = 0
  PropertyReport reduced();              // no nonzero x with x² = 0
  PropertyReport abelian();              // idempotents are central
  PropertyReport unity();                // two-sided identity exists
  PropertyReport rickart_star();         // r({x}) = eR with xe = 0
  PropertyReport weakly_rickart_star();  // RP(x) exists for every x
  PropertyReport baer_star();            // every r(S) = eR
  PropertyReport quasi_baer_star();      // every r(ideal) = eR
  /// r(aR) = eR and l(Ra) = Rf for every a; `detail` reports each clause.
  PropertyReport pq_baer_star();
  /// C(x) exists and xRy = 0 iff C(x)y = 0. When true, `detail` also records
  /// whether xRy = 0 iff yRx = 0 holds for all pairs.
  PropertyReport weakly_pq_baer_star();

  /// Lowest-index x whose right projection is not the central cover of any
  /// element. Throws HypothesisNotMet unless weakly Rickart and weakly p.q.-Baer.
  std::optional<Index> rp_not_central_cover();

  /// xRy = 0 iff yRx = 0 for all x, y; returns the first failing pair.
  std::optional<std::pair<Index, Index>> symmetric_zero_product_failure();

  /// Dispatch by CLI name, e.g. "baer-star". Throws InvalidDescriptor for unknown names.
  PropertyReport run(std::string_view property);
  static const std::vector<std::string>& property_names();

  ProjectionAnalysis& projection_analysis();
  AnnihilatorCache& annihilator_cache();

  /// Messages about scans on rings above the warning order.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  PropertyReport make(std::string property) const;
  void warn_superquadratic(std::string_view property);
  /// Lowest projection e with e in S and S = eR (resp. S = Re), if any.
  std::optional<Index> right_generator(const Bitset& s);
  std::optional<Index> left_generator(const Bitset& s);
  PropertyReport family_report(std::string property, FamilyMode mode);
  template <typename Fn>
  PropertyReport memo(const std::string& key, Fn&& compute);

  StarRing ring_;
  ScanOptions opts_;
  std::unique_ptr<ProjectionAnalysis> projections_;
  std::unique_ptr<AnnihilatorCache> annihilators_;
  std::optional<std::unordered_map<Bitset, Index, BitsetHash>> right_generated_;
  std::optional<std::unordered_map<Bitset, Index, BitsetHash>> left_generated_;
  std::map<std::string, PropertyReport, std::less<>> cache_;
  std::vector<std::string> warnings_;
};

PropertyReport is_proper_involution(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_semi_proper(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_reduced(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_abelian(const StarRing& r, const ScanOptions& opts = {});
PropertyReport has_unity(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_rickart_star(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_weakly_rickart_star(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_baer_star(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_quasi_baer_star(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_pq_baer_star(const StarRing& r, const ScanOptions& opts = {});
PropertyReport is_weakly_pq_baer_star(const StarRing& r, const ScanOptions& opts = {});
std::optional<Index> find_rp_not_central_cover(const StarRing& r, const ScanOptions& opts = {});

/// Arithmetic Baer* verdict for M_n(Z_m): n = 1 needs m square-free; n = 2
/// needs m square-free with every prime factor ≡ 3 (mod 4); n >= 3 never.
bool classify_matrix_ring(std::uint32_t n, std::uint64_t m);

/// Checks on each corpus ring:
///   (a) Rickart* iff weakly Rickart* and unity
///   (b) p.q.-Baer* iff weakly p.q.-Baer* and unity
///   (c) Rickart* implies unity and proper involution
///   (d) p.q.-Baer* implies unity and semi-proper involution
///   (e) abelian and Rickart* implies p.q.-Baer*
///   (f) reduced and p.q.-Baer* implies Rickart*
///   (g) p.q.-Baer* implies xRy = 0 iff yRx = 0
///   finite collapse: Rickart* iff Baer*
/// One report per ring and check; a false verdict is a counterexample.
std::vector<PropertyReport> implication_suite(const std::vector<RingDescriptor>& corpus,
                                              const ScanOptions& opts = {});

}  // namespace starlab
