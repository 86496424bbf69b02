#include <functional>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "starlab/classifiers.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/unitification.hpp"

using namespace starlab;

namespace {

StarRing ring(const char* expr) { return build_ring(parse_ring_expr(expr)); }

ScalarAlgebra natural(const char* r, const char* k) {
  return build_scalar_algebra(ring(r), ring(k), NaturalAction{});
}

Index coset(const QuotientRing& q, const char* pair_literal) {
  return q.ring.index_of(parse_element_literal(pair_literal));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

bool has_flag(const EmbeddingReport& report, const std::string& prefix) {
  for (const auto& f : report.flags) {
    if (f.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("unitification") {
  TEST_CASE("R + K has the expected order, unity and involution") {
    const auto m3 = natural("M(2,Z(3))", "Z(3)");
    const StarRing r1 = build_r1(m3);
    CHECK(r1.order() == 243);
    CHECK(r1.unity() == pair_index(m3, {0, 1}));
    CHECK(validate_star_ring(r1).verdict);

    const auto zr = natural("sub(Z(9);3)", "Z(9)");
    const StarRing z1 = build_r1(zr);
    CHECK(z1.order() == 27);
    CHECK(validate_star_ring(z1).verdict);

    // R sits inside as the *-ideal {(a, 0)}.
    for (Index a = 0; a < m3.ring().order(); ++a) {
      const Index p = pair_index(m3, {a, 0});
      CHECK(split_pair(m3, r1.star(p)).lambda == 0);
      for (Index q = 0; q < r1.order(); q += 5) {
        CHECK(split_pair(m3, r1.mul(p, q)).lambda == 0);
        CHECK(split_pair(m3, r1.mul(q, p)).lambda == 0);
      }
    }

    ScanOptions tight;
    tight.limits.max_order = 100;
    CHECK(code_of([&] { build_r1(m3, tight.limits); }) == ErrorCode::OrderCapExceeded);
  }

  TEST_CASE("scalar multiplication on pairs") {
    const auto z6 = natural("Z(6)", "Z(6)");
    const StarRing r1 = build_r1(z6);
    for (Index mu = 0; mu < 6; ++mu) {
      for (Index p = 0; p < r1.order(); ++p) CHECK(scale_pair(z6, mu, p) == r1.mul(pair_index(z6, {0, mu}), p));
    }
  }

  TEST_CASE("extension lemmas") {
    CHECK(check_r1_lemmas(natural("M(2,Z(3))", "Z(3)")).verdict);
    CHECK(check_r1_lemmas(natural("Z(3)", "Z(3)")).verdict);
  }

  TEST_CASE("the kernel N") {
    const auto m3 = natural("M(2,Z(3))", "Z(3)");
    const StarRing r1 = build_r1(m3);
    const KernelN n = compute_kernel(m3, r1);
    CHECK(n.order() == 3);
    const Index identity = *m3.ring().unity();
    for (Index lambda = 0; lambda < 3; ++lambda) {
      const Index minus = m3.ring().neg(scalar_multiple(m3.ring(), lambda, identity));
      CHECK(n.members.test(pair_index(m3, {minus, lambda})));
    }
    CHECK(n.members.test(0));

    const auto zr = natural("sub(Z(9);3)", "Z(9)");
    const KernelN nz = compute_kernel(zr, build_r1(zr));
    CHECK(nz.order() == 9);
    for (Index p : nz.members.members()) CHECK(split_pair(zr, p).lambda % 3 == 0);
  }

  TEST_CASE("kernel orders agree with the oracle") {
    for (int k : {3, 6, 9}) {
      CHECK(compute_kernel(natural("M(2,Z(3))", ("Z(" + std::to_string(k) + ")").c_str()),
                           build_r1(natural("M(2,Z(3))", ("Z(" + std::to_string(k) + ")").c_str())))
                .order() == static_cast<std::size_t>(oracle::mat_kernel_order(3, k)));
    }
    for (int n = 2; n <= 12; ++n) {
      for (int k = n; k <= 24; k += n) {
        const auto alg = build_scalar_algebra(build_ring(RingDescriptor::cyclic(n)),
                                              build_ring(RingDescriptor::cyclic(k)), NaturalAction{});
        CHECK(compute_kernel(alg, build_r1(alg)).order() == static_cast<std::size_t>(oracle::zm_kernel_order(n, k)));
      }
    }
  }

  TEST_CASE("quotients") {
    const auto m3 = natural("M(2,Z(3))", "Z(3)");
    const QuotientRing q = build_quotient(m3);
    CHECK(q.ring.order() == 81);
    CHECK(q.ring.order() * q.kernel.order() == 243);
    CHECK(q.ring.unity() == coset(q, "([[0,0],[0,0]],1)"));
    CHECK(q.involution_source == InvolutionSource::ProperInvolution);
    std::set<Index> image;
    for (Index a = 0; a < 81; ++a) image.insert(embed(m3, q, a));
    CHECK(image.size() == 81);
    CHECK(check_unital_collapse(m3, q).verdict);
    // Canonical representatives are the lexicographically least members.
    for (Index c = 0; c < q.ring.order(); ++c) {
      const Index rep = (*q.representative)[c];
      for (Index p = 0; p < rep; ++p) CHECK((*q.coset_of)[p] != c);
    }

    const auto zr = natural("sub(Z(9);3)", "Z(9)");
    const QuotientRing qz = build_quotient(zr);
    CHECK(qz.ring.order() == 3);
    CHECK(qz.involution_source == InvolutionSource::DirectCheck);
    const auto inj = embedding_injectivity(zr, qz);
    CHECK_FALSE(inj.injective);
    REQUIRE(inj.witness.has_value());
    CHECK(zr.ring().literal(*inj.witness) == ElementLiteral::integer(3));
    CHECK(embed(zr, qz, *inj.witness) == 0);
    CHECK(embed(zr, qz, 0) == 0);

    const auto z6 = natural("Z(6)", "Z(6)");
    const QuotientRing q6 = build_quotient(z6);
    CHECK(q6.ring.order() == 6);
    CHECK(embedding_injectivity(z6, q6).injective);
  }

  TEST_CASE("a kernel that is not closed under the involution") {
    const auto alg = natural("sub(M(3,Z(2));[[0,0,0],[0,0,0],[1,1,0]])", "Z(2)");
    CHECK(code_of([&] { build_quotient(alg); }) == ErrorCode::InvolutionNotWellDefined);
    // The extension itself is still available.
    CHECK(build_r1(alg).order() == 2 * alg.ring().order());
  }

  TEST_CASE("RP in the quotient by formula and by search") {
    const auto z6 = natural("Z(6)", "Z(6)");
    const QuotientRing q = build_quotient(z6);
    const QuotientCalculus calc(z6, q);
    const Index c31 = coset(q, "(3,1)");
    const auto rp31 = calc.rp_in_quotient(c31);
    CHECK(rp31.value == c31);
    CHECK(calc.rp_formula(pair_index(z6, {3, 1})) == c31);
    CHECK(calc.rp_in_quotient(coset(q, "(0,1)")).value == coset(q, "(0,1)"));

    const auto m3 = natural("M(2,Z(3))", "Z(3)");
    const QuotientRing qm = build_quotient(m3);
    const QuotientCalculus cm(m3, qm);
    const Index e12 = m3.ring().index_of(parse_element_literal("[[0,1],[0,0]]"));
    const Index e22 = m3.ring().index_of(parse_element_literal("[[0,0],[0,1]]"));
    const auto got = cm.rp_in_quotient(embed(m3, qm, e12));
    CHECK(got.value == embed(m3, qm, e22));
    CHECK(got.route == FormulaRoute::Embedded);
    // Every coset has a formula route; none is left to search alone.
    for (Index c = 0; c < qm.ring.order(); ++c) CHECK(cm.rp_in_quotient(c).route != FormulaRoute::BruteOnly);
    CHECK(code_of([&] { cm.rp_formula(pair_index(m3, {e12, 1})); }) == ErrorCode::HypothesisNotMet);
  }

  TEST_CASE("central covers in the quotient") {
    const auto m3 = natural("M(2,Z(3))", "Z(3)");
    const QuotientRing q = build_quotient(m3);
    const QuotientCalculus calc(m3, q);
    const Index e11 = m3.ring().index_of(parse_element_literal("[[1,0],[0,0]]"));
    CHECK(calc.cover_in_quotient(embed(m3, q, e11)).value == embed(m3, q, *m3.ring().unity()));
    CHECK(calc.cover_in_quotient(coset(q, "([[0,0],[0,0]],1)")).value == q.ring.unity());

    const auto z6 = natural("Z(6)", "Z(6)");
    const QuotientRing q6 = build_quotient(z6);
    const QuotientCalculus c6(z6, q6);
    CHECK(c6.cover_in_quotient(coset(q6, "(3,1)")).value == coset(q6, "(3,1)"));
    CHECK(c6.cover_formula(pair_index(z6, {3, 1})) == coset(q6, "(3,1)"));
  }

  TEST_CASE("verification in Rickart mode") {
    const auto z6 = verify_unitification(natural("Z(6)", "Z(6)"), UnitificationMode::Rickart);
    CHECK(z6.verdict);
    CHECK(z6.preserved_rows() == 6);
    CHECK(z6.preservation.size() == 6);
    CHECK(z6.quotient_order == 6);
    CHECK(has_flag(z6, "K is not an integral domain"));
    CHECK(has_flag(z6, "torsion present"));

    const auto m6 = verify_unitification(natural("M(2,Z(3))", "Z(6)"), UnitificationMode::Rickart);
    CHECK(m6.verdict);
    CHECK(m6.quotient_order == 81);
    CHECK(m6.kernel_order == 6);
    CHECK(m6.preserved_rows() == 81);
    CHECK(has_flag(m6, "torsion present"));
    CHECK(m6.formula_checks > 81);

    const auto m3 = verify_unitification(natural("M(2,Z(3))", "Z(3)"), UnitificationMode::Rickart);
    CHECK(m3.verdict);
    CHECK(m3.flags.empty());
  }

  TEST_CASE("verification in p.q.-Baer mode") {
    const auto m3 = verify_unitification(natural("M(2,Z(3))", "Z(3)"), UnitificationMode::PqBaer);
    CHECK(m3.verdict);
    CHECK(m3.preserved_rows() == 81);
    CHECK(m3.quotient_in_class);
    const auto z6 = verify_unitification(natural("Z(6)", "Z(6)"), UnitificationMode::PqBaer);
    CHECK(z6.verdict);
    CHECK(z6.preserved_rows() == 6);
  }

  TEST_CASE("hypothesis gates") {
    CHECK(code_of([&] { verify_unitification(natural("sub(Z(9);3)", "Z(9)"), UnitificationMode::Rickart); }) ==
          ErrorCode::HypothesisNotMet);
    CHECK(code_of([&] { verify_unitification(natural("Z(4)", "Z(4)"), UnitificationMode::PqBaer); }) ==
          ErrorCode::HypothesisNotMet);
    CHECK(code_of([&] { check_r1_lemmas(natural("Z(6)", "Z(6)")); }) == ErrorCode::HypothesisNotMet);
  }

  TEST_CASE("report JSON carries the published fields") {
    const auto report = verify_unitification(natural("Z(6)", "Z(6)"), UnitificationMode::Rickart);
    const auto j = to_json(report);
    for (const char* key : {"hypotheses", "kernel_order", "quotient_order", "preservation", "verdict"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["hypotheses"]["weakly_rickart"] == true);
    CHECK(j["hypotheses"]["condition3"] == true);
    CHECK(j["hypotheses"]["K_domain"] == false);
    CHECK(j["hypotheses"]["torsion_free"] == false);
    CHECK(j["preservation"][2]["a"] == 2);
    CHECK(j["preservation"][2]["rp_R"] == 4);
    CHECK(j["preservation"][2]["ok"] == true);
    CHECK(j["preserved"] == "6/6");
  }
}
