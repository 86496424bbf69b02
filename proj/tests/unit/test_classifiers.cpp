#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "starlab/classifiers.hpp"
#include "starlab/corpus.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/projections.hpp"
#include "starlab/ring_builder.hpp"

using namespace starlab;

namespace {

StarRing ring(const char* expr) { return build_ring(parse_ring_expr(expr)); }

struct Expectation {
  const char* ring;
  const char* property;
  bool verdict;
};

}  // namespace

TEST_SUITE("classifiers") {
  TEST_CASE("verdicts on the reference rings") {
    const Expectation table[] = {
        {"M(2,Z(3))", "proper", true},
        {"sub(Z(9);3)", "proper", false},
        {"Z(2)", "proper", true},
        {"M(2,Z(3))", "semi-proper", true},
        {"sub(Z(9);3)", "semi-proper", false},
        {"Z(6)", "semi-proper", true},
        {"Z(6)", "reduced", true},
        {"Z(6)", "abelian", true},
        {"Z(6)", "unity", true},
        {"M(2,Z(3))", "reduced", false},
        {"M(2,Z(3))", "abelian", false},
        {"M(2,Z(3))", "unity", true},
        {"sub(Z(9);3)", "reduced", false},
        {"sub(Z(9);3)", "abelian", true},
        {"sub(Z(9);3)", "unity", false},
        {"M(2,Z(3))", "rickart-star", true},
        {"sub(Z(9);3)", "rickart-star", false},
        {"Z(4)", "rickart-star", false},
        {"Z(6)", "weakly-rickart-star", true},
        {"sub(Z(9);3)", "weakly-rickart-star", false},
        {"M(2,Z(5))", "weakly-rickart-star", false},
        {"M(2,Z(3))", "baer-star", true},
        {"Z(6)", "baer-star", true},
        {"M(2,Z(2))", "baer-star", false},
        {"M(2,Z(3))", "quasi-baer-star", true},
        {"Z(4)", "quasi-baer-star", false},
        {"sub(Z(9);3)", "quasi-baer-star", false},
        {"M(2,Z(3))", "pq-baer-star", true},
        {"Z(6)", "pq-baer-star", true},
        {"sub(Z(9);3)", "pq-baer-star", false},
        {"M(2,Z(3))", "weakly-pq-baer-star", true},
        {"sub(Z(9);3)", "weakly-pq-baer-star", false},
        {"Z(6)", "weakly-pq-baer-star", true},
        {"M(2,Z(3))", "star-ring-axioms", true},
    };
    for (const auto& row : table) {
      const std::string ring_name = row.ring, property = row.property;
      CAPTURE(ring_name);
      CAPTURE(property);
      Classifier c(ring(row.ring));
      const auto report = c.run(row.property);
      CHECK(report.verdict == row.verdict);
      if (!report.verdict && property != "unity") CHECK_FALSE(report.witness.empty());
    }
  }

  TEST_CASE("false verdicts carry re-checkable witnesses") {
    const StarRing zr = ring("sub(Z(9);3)");
    const auto proper = is_proper_involution(zr);
    REQUIRE(proper.witness.size() == 1);
    CHECK(proper.witness_literals.front() == ElementLiteral::integer(3));
    CHECK(zr.mul(zr.star(proper.witness[0]), proper.witness[0]) == 0);

    const auto semi = is_semi_proper(zr);
    CHECK(semi.witness_literals.front() == ElementLiteral::integer(3));
    const auto weak = is_weakly_rickart_star(zr);
    CHECK(weak.witness_literals.front() == ElementLiteral::integer(3));
    CHECK(ProjectionAnalysis(zr).find_rp(weak.witness[0]).candidates.empty());

    const StarRing m = ring("M(2,Z(3))");
    const auto reduced = is_reduced(m);
    CHECK(reduced.witness_literals.front() == parse_element_literal("[[0,1],[0,0]]"));
    const auto abelian = is_abelian(m);
    CHECK(abelian.witness_literals.front() == parse_element_literal("[[1,0],[0,0]]"));
    const Index e = abelian.witness[0], x = abelian.witness[1];
    CHECK(m.mul(e, x) != m.mul(x, e));
  }

  TEST_CASE("p.q.-Baer clauses are reported separately") {
    const auto yes = is_pq_baer_star(ring("M(2,Z(3))"));
    CHECK(yes.detail.find("right clause r(aR) = eR: true") != std::string::npos);
    CHECK(yes.detail.find("left clause l(Ra) = Rf: true") != std::string::npos);
  }

  TEST_CASE("arithmetic classification of M(n,Z(m))") {
    CHECK(classify_matrix_ring(2, 3));
    CHECK_FALSE(classify_matrix_ring(2, 5));
    CHECK_FALSE(classify_matrix_ring(1, 12));
    CHECK(classify_matrix_ring(2, 21));
    CHECK_FALSE(classify_matrix_ring(3, 3));
    CHECK_THROWS_AS(classify_matrix_ring(0, 3), Error);
    CHECK_THROWS_AS(classify_matrix_ring(2, 1), Error);
    for (int m = 2; m <= 60; ++m) CHECK(classify_matrix_ring(1, m) == oracle::square_free(m));
  }

  TEST_CASE("arithmetic and brute-force Baer* verdicts agree") {
    for (std::uint64_t m = 2; m <= 12; ++m) {
      CHECK(classify_matrix_ring(1, m) == is_baer_star(build_ring(RingDescriptor::cyclic(m))).verdict);
    }
    for (std::uint64_t m = 2; m <= 5; ++m) {
      CAPTURE(m);
      const auto d = RingDescriptor::matrix(2, RingDescriptor::cyclic(m));
      CHECK(classify_matrix_ring(2, m) == is_baer_star(build_ring(d)).verdict);
    }
  }

  TEST_CASE("right projections that are not central covers") {
    const StarRing m = ring("M(2,Z(3))");
    const auto x = find_rp_not_central_cover(m);
    REQUIRE(x.has_value());
    const ProjectionAnalysis a(m);
    std::set<Index> covers;
    for (Index y = 0; y < m.order(); ++y) covers.insert(a.central_cover(y));
    CHECK(covers == std::set<Index>{0, *m.unity()});
    CHECK_FALSE(covers.count(a.rp(*x)));
    CHECK(m.literal(*x) == parse_element_literal("[[1,0],[0,0]]"));

    CHECK_FALSE(find_rp_not_central_cover(ring("Z(6)")).has_value());
    CHECK_FALSE(find_rp_not_central_cover(ring("Z(2)")).has_value());
    CHECK_THROWS_AS(find_rp_not_central_cover(ring("sub(Z(9);3)")), Error);
  }

  TEST_CASE("verdicts are invariant under *-isomorphism") {
    Classifier a(ring("prod(Z(2),Z(3))"));
    Classifier b(ring("Z(6)"));
    for (const auto& name : Classifier::property_names()) CHECK(a.run(name).verdict == b.run(name).verdict);
  }

  TEST_CASE("finite rings: Rickart* iff Baer*") {
    for (const auto& d : generate_corpus("small")) {
      Classifier c(build_ring(d));
      CHECK(c.rickart_star().verdict == c.baer_star().verdict);
    }
  }

  TEST_CASE("implication suite has no violations") {
    std::vector<RingDescriptor> matrices;
    for (std::uint64_t m = 2; m <= 6; ++m) matrices.push_back(RingDescriptor::matrix(2, RingDescriptor::cyclic(m)));
    for (const auto& corpus : {generate_corpus("all-cyclic"), matrices, {parse_ring_expr("sub(Z(9);3)")}}) {
      const auto reports = implication_suite(corpus);
      CHECK(reports.size() == corpus.size() * 8);
      for (const auto& r : reports) {
        CAPTURE(r.ring);
        CAPTURE(r.property);
        CHECK(r.verdict);
      }
    }
  }

  TEST_CASE("unknown property names are rejected") {
    Classifier c(ring("Z(2)"));
    CHECK_THROWS_AS(c.run("banach"), Error);
  }

  TEST_CASE("large rings emit a warning for superquadratic scans") {
    ScanOptions opts;
    opts.limits.warn_order = 10;
    Classifier c(ring("Z(12)"), opts);
    c.quasi_baer_star();
    CHECK_FALSE(c.warnings().empty());
  }
}
