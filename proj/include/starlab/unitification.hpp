#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "starlab/bitset.hpp"
#include "starlab/projections.hpp"
#include "starlab/report.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/star_ring.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// (a, λ) in R ⊕ K. Its index in the extended ring is a·|K| + λ.
struct PairElement {
  Index a = 0;
  Index lambda = 0;

  bool operator==(const PairElement&) const = default;
};

Index pair_index(const ScalarAlgebra& alg, PairElement p);
PairElement split_pair(const ScalarAlgebra& alg, Index pair);

/// R ⊕ K with (a,λ)(b,μ) = (ab + μa + λb, λμ), (a,λ)* = (a*, λ*) and unity (0,1).
/// Throws OrderCapExceeded when |R|·|K| exceeds the cap.
StarRing build_r1(const ScalarAlgebra& alg, const Limits& limits = {});

/// μ(a, λ) = (μa, μλ).
Index scale_pair(const ScalarAlgebra& alg, Index mu, Index pair);

/// Pairs (a, λ) with ax + λx = 0 for every x in R.
struct KernelN {
  Bitset members;  // over indices of the extended ring
  std::size_t order() const { return members.count(); }
};

/// Exact kernel; throws VerificationFailed if it is not an ideal of R ⊕ K.
KernelN compute_kernel(const ScalarAlgebra& alg, const StarRing& r1, const ScanOptions& opts = {});

enum class InvolutionSource { ProperInvolution, SemiProperInvolution, DirectCheck };
std::string_view to_string(InvolutionSource source);

/// (R ⊕ K)/N. Cosets are indexed in ascending order of their canonical
/// representative, the lexicographically least (a, λ) they contain; the zero
/// coset is index 0 and [0,1] is the unity.
struct QuotientRing {
  StarRing extended;
  KernelN kernel;
  StarRing ring;
  std::shared_ptr<const std::vector<Index>> coset_of;        // pair index -> coset
  std::shared_ptr<const std::vector<Index>> representative;  // coset -> pair index
  InvolutionSource involution_source = InvolutionSource::DirectCheck;

  Index coset(PairElement p, const ScalarAlgebra& alg) const { return (*coset_of)[pair_index(alg, p)]; }
};

/// Builds R ⊕ K, N and the quotient. Throws InvolutionNotWellDefined(pair)
/// when N is not closed under the involution, VerificationFailed when the
/// quotient operations depend on the representative.
QuotientRing build_quotient(const ScalarAlgebra& alg, const ScanOptions& opts = {});

/// a ↦ [a, 0].
Index embed(const ScalarAlgebra& alg, const QuotientRing& q, Index a);

/// Injective iff the total left annihilator {x : xR = 0} is {0}; the witness
/// is its lowest nonzero member.
struct InjectivityVerdict {
  bool injective = true;
  std::optional<Index> witness;
};
InjectivityVerdict embedding_injectivity(const ScalarAlgebra& alg, const QuotientRing& q);

/// Structural checks on R ⊕ K: properness carries over from R, and for x in R and a
/// projection e of R, e = RP(x) in R iff (e,0) = RP((x,0)) in R ⊕ K.
/// Throws HypothesisNotMet unless K is a domain and the action is torsion-free.
PropertyReport check_r1_lemmas(const ScalarAlgebra& alg, const ScanOptions& opts = {});

/// How a right projection or central cover in the quotient was obtained.
enum class FormulaRoute {
  Embedded,     // coset contains (a, 0): image of the value at a in R
  ScaledUnit,   // coset contains a self-adjoint (a, λ), λ ≠ 0: [-g, 1]
  ThroughStar,  // via x*x under a proper involution
  BruteOnly,    // no formula applies
};
std::string_view to_string(FormulaRoute route);

struct QuotientProjection {
  Index value = 0;       // coset index
  FormulaRoute route = FormulaRoute::BruteOnly;
  std::optional<Index> representative;  // pair the formula was evaluated at
};

/// Right projections and central covers in the quotient, computed both by
/// formula and by definition-level search.
class QuotientCalculus {
 public:
  QuotientCalculus(const ScalarAlgebra& alg, const QuotientRing& q, unsigned jobs = 1);

  const ProjectionAnalysis& ring_analysis() const noexcept { return ring_; }
  const ProjectionAnalysis& quotient_analysis() const noexcept { return quotient_; }
  bool quotient_proper() const noexcept { return quotient_proper_; }

  /// RP of the coset of `pair` by formula: λ = 0 gives [RP(a), 0]; a
  /// self-adjoint pair with λ ≠ 0 gives [-g, 1], g the greatest projection
  /// with ag = -λg. Throws HypothesisNotMet for other pairs.
  Index rp_formula(Index pair) const;
  /// C of the coset of `pair`: [C(a), 0] for λ = 0, otherwise [-g, 1] with g
  /// the greatest central projection with ag = -λg.
  Index cover_formula(Index pair) const;

  /// Formula value compared with the brute-force result; FormulaMismatch on disagreement.
  QuotientProjection rp_in_quotient(Index coset) const;
  QuotientProjection cover_in_quotient(Index coset) const;

 private:
  const ScalarAlgebra& alg_;
  const QuotientRing& q_;
  ProjectionAnalysis ring_;
  ProjectionAnalysis quotient_;
  bool quotient_proper_ = false;
};

enum class UnitificationMode { Rickart, PqBaer };
std::string_view to_string(UnitificationMode mode);

struct PreservationRow {
  ElementLiteral a;
  ElementLiteral in_ring;      // RP(a) or C(a) in R
  ElementLiteral in_quotient;  // RP or C of [a, 0] in the quotient
  bool ok = false;
};

/// e_λ of condition (3) or (β), as literals.
struct BoundRow {
  ElementLiteral lambda;
  ElementLiteral e;
  bool least = true;
};

struct EmbeddingReport {
  std::string ring;
  std::string scalars;
  UnitificationMode mode = UnitificationMode::Rickart;
  /// Hypothesis name -> value, e.g. "weakly_rickart", "condition3", "K_domain".
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::uint64_t characteristic = 0;
  std::vector<BoundRow> bounds;
  std::size_t kernel_order = 0;
  std::size_t quotient_order = 0;
  bool injective = false;
  std::optional<ElementLiteral> injectivity_witness;
  bool quotient_in_class = false;
  std::vector<PreservationRow> preservation;
  std::size_t formula_checks = 0;
  std::vector<std::string> flags;
  bool verdict = false;
  /// First claim that failed, with its counterexample, when verdict is false.
  std::optional<std::string> failed_claim;
  std::vector<ElementLiteral> failure_witness;

  std::size_t preserved_rows() const;
};

nlohmann::json to_json(const EmbeddingReport& report);
std::string to_text(const EmbeddingReport& report);

/// Full embedding check: hypotheses, quotient class membership, preservation for
/// every a in R, and formula-versus-search agreement at every applicable
/// representative. Throws HypothesisNotMet when R or the action falls outside
/// the hypotheses; a failed claim is returned as verdict false so that the
/// tables can still be printed.
EmbeddingReport verify_unitification(const ScalarAlgebra& alg, UnitificationMode mode,
                                     const ScanOptions& opts = {});

/// Throws VerificationFailed(claim) for a report whose verdict is false.
void require_verified(const EmbeddingReport& report);

/// For unital R with {x : xR = 0} = {0}: the embedding is a *-isomorphism onto the quotient.
PropertyReport check_unital_collapse(const ScalarAlgebra& alg, const QuotientRing& q);

}  // namespace starlab
