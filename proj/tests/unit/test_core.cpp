#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "starlab/corpus.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/scalar_algebra.hpp"

using namespace starlab;

namespace {

StarRing ring(const char* expr, Limits limits = {}) { return build_ring(parse_ring_expr(expr), limits); }

ElementLiteral mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<ElementLiteral> out;
  for (auto row : rows) {
    std::vector<ElementLiteral> cells;
    for (int v : row) cells.push_back(ElementLiteral::integer(v));
    out.push_back(ElementLiteral::list(std::move(cells)));
  }
  return ElementLiteral::list(std::move(out));
}

// Z(6) with two multiplication entries swapped.
class CorruptedZ6 final : public RingBackend {
 public:
  std::size_t order() const override { return 6; }
  Index add(Index a, Index b) const override { return (a + b) % 6; }
  Index mul(Index a, Index b) const override {
    if (a == 2 && b == 2) return 0;
    if (a == 2 && b == 3) return 4;
    return (a * b) % 6;
  }
  Index neg(Index a) const override { return (6 - a) % 6; }
  Index star(Index a) const override { return a; }
  ElementLiteral literal(Index a) const override { return ElementLiteral::integer(a); }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    return lit.value >= 0 && lit.value < 6 ? std::optional<Index>(static_cast<Index>(lit.value)) : std::nullopt;
  }
};

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("ring expressions parse into constructor trees") {
    CHECK(parse_ring_expr("M(2, Z(3))") == RingDescriptor::matrix(2, RingDescriptor::cyclic(3)));
    CHECK(parse_ring_expr("sub(Z(9); 3)") ==
          RingDescriptor::subring(RingDescriptor::cyclic(9), {ElementLiteral::integer(3)}));
    CHECK(parse_ring_expr(" prod( Z(2) ,Z(3) ) ") ==
          RingDescriptor::product(RingDescriptor::cyclic(2), RingDescriptor::cyclic(3)));
    CHECK(parse_element_literal("[[0,1],[0,0]]") == mat({{0, 1}, {0, 0}}));
    CHECK(parse_element_literal("(1, [2])") ==
          ElementLiteral::tuple(ElementLiteral::integer(1), ElementLiteral::list({ElementLiteral::integer(2)})));
  }

  TEST_CASE("parse errors carry the offset and the expected tokens") {
    try {
      parse_ring_expr("M(2 Z(3))");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
      REQUIRE(e.expected().size() == 1);
      CHECK(e.expected().front() == ",");
    }
    CHECK_THROWS_AS(parse_ring_expr("Z(0)"), ParseError);
    CHECK_THROWS_AS(parse_ring_expr("M(2,prod(Z(2),Z(2)))"), ParseError);
    CHECK_THROWS_AS(parse_ring_expr("Z(3) trailing"), ParseError);
    CHECK_THROWS_AS(parse_ring_expr("sub(Z(9);)"), ParseError);
    CHECK_THROWS_AS(parse_ring_expr(std::string(70 * 1024, ' ') + "Z(2)"), ParseError);
  }

  TEST_CASE("descriptors round-trip through text and JSON") {
    for (const auto& profile : corpus_profiles()) {
      for (const auto& d : generate_corpus(profile)) {
        CHECK(parse_ring_expr(to_string(d)) == d);
        CHECK(descriptor_from_json(to_json(d)) == d);
        CHECK(to_string(descriptor_from_json(nlohmann::json::parse(to_json(d).dump()))) == to_string(d));
      }
    }
    CHECK(to_string(parse_ring_expr("sub( M(2,Z(3)) ; [[1,0],[0,0]] , [[0,1],[0,0]])")) ==
          "sub(M(2,Z(3));[[1,0],[0,0]],[[0,1],[0,0]])");
  }

  TEST_CASE("corpus profiles are duplicate-free") {
    for (const auto& profile : corpus_profiles()) {
      std::set<std::string> seen;
      for (const auto& d : generate_corpus(profile)) CHECK(seen.insert(descriptor_hash(d)).second);
    }
    auto small = generate_corpus("small");
    auto has = [&](const char* text) {
      return std::any_of(small.begin(), small.end(), [&](const RingDescriptor& d) { return to_string(d) == text; });
    };
    CHECK(has("Z(2)"));
    CHECK(has("Z(16)"));
    CHECK(has("sub(Z(4);2)"));
    CHECK(has("sub(Z(9);3)"));
    CHECK(has("prod(Z(2),Z(3))"));
    CHECK(generate_corpus("all-cyclic").size() == 29);
    CHECK_THROWS_AS(generate_corpus("huge"), Error);
  }

  TEST_CASE("cyclic rings") {
    const StarRing z3 = ring("Z(3)");
    CHECK(z3.order() == 3);
    CHECK(z3.unity() == Index{1});
    for (Index x = 0; x < 3; ++x) CHECK(z3.star(x) == x);
    CHECK(ring("Z(1)").order() == 1);
  }

  TEST_CASE("M(2,Z(3)) agrees with the matrix oracle") {
    const StarRing r = ring("M(2,Z(3))");
    REQUIRE(r.order() == 81);
    CHECK(r.unity() == oracle::encode(3, {1, 0, 0, 1}));
    CHECK(r.index_of(mat({{1, 0}, {0, 0}})) == 1);
    CHECK(r.index_of(mat({{0, 1}, {0, 0}})) == 3);
    for (Index x = 0; x < 81; ++x) {
      const auto a = oracle::decode(3, x);
      CHECK(r.star(x) == oracle::encode(3, oracle::transpose(a)));
      CHECK(r.star(r.star(x)) == x);
      for (Index y = 0; y < 81; y += 7) {
        CHECK(r.mul(x, y) == oracle::encode(3, oracle::mul(3, a, oracle::decode(3, y))));
      }
    }
  }

  TEST_CASE("untabulated rings compute the same products") {
    Limits tight;
    tight.table_threshold = 10;
    const StarRing lazy = ring("M(2,Z(3))", tight);
    const StarRing eager = ring("M(2,Z(3))");
    CHECK_FALSE(lazy.tabulated());
    CHECK(eager.tabulated());
    for (Index x = 0; x < 81; ++x) {
      for (Index y = 0; y < 81; ++y) {
        CHECK(lazy.mul(x, y) == eager.mul(x, y));
        CHECK(lazy.add(x, y) == eager.add(x, y));
      }
    }
  }

  TEST_CASE("construction is deterministic") {
    const StarRing a = ring("prod(Z(2),M(2,Z(2)))");
    const StarRing b = ring("prod(Z(2),M(2,Z(2)))");
    REQUIRE(a.order() == b.order());
    for (Index x = 0; x < a.order(); ++x) {
      CHECK(a.literal(x) == b.literal(x));
      CHECK(a.star(x) == b.star(x));
      for (Index y = 0; y < a.order(); ++y) CHECK(a.mul(x, y) == b.mul(x, y));
    }
  }

  TEST_CASE("the zero-multiplication subring of Z(9)") {
    const StarRing r = ring("sub(Z(9);3)");
    REQUIRE(r.order() == 3);
    CHECK(r.literal(0) == ElementLiteral::integer(0));
    CHECK(r.literal(1) == ElementLiteral::integer(3));
    CHECK(r.literal(2) == ElementLiteral::integer(6));
    CHECK_FALSE(r.unity().has_value());
    for (Index x = 0; x < 3; ++x) {
      for (Index y = 0; y < 3; ++y) CHECK(r.mul(x, y) == 0);
    }
  }

  TEST_CASE("subring closure is a fixpoint") {
    const StarRing parent = ring("M(2,Z(2))");
    const Index g = parent.index_of(mat({{1, 1}, {0, 0}}));
    const std::vector<Index> gens{g};
    const auto closed = subring_closure(parent, gens);
    CHECK(subring_closure(parent, closed) == closed);
    CHECK(std::is_sorted(closed.begin(), closed.end()));
    CHECK(closed.front() == 0);
    CHECK_THROWS_AS(ring("sub(Z(9);10)"), Error);
  }

  TEST_CASE("axiom audit") {
    CHECK(validate_star_ring(ring("Z(6)")).verdict);
    CHECK(validate_star_ring(ring("M(2,Z(3))")).verdict);
    CHECK(validate_star_ring(ring("sub(Z(9);3)")).verdict);
    const StarRing bad(std::make_shared<CorruptedZ6>(), "corrupted", std::nullopt);
    const auto report = validate_star_ring(bad);
    CHECK_FALSE(report.verdict);
    CHECK(report.detail == "associativity");
    REQUIRE(report.witness.size() == 3);
    const Index x = report.witness[0], y = report.witness[1], z = report.witness[2];
    CHECK(bad.mul(bad.mul(x, y), z) != bad.mul(x, bad.mul(y, z)));
  }

  TEST_CASE("order cap") {
    Limits small;
    small.max_order = 50;
    CHECK_THROWS_AS(ring("M(2,Z(3))", small), Error);
    try {
      ring("M(2,Z(3))", small);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OrderCapExceeded);
    }
    CHECK(ring("Z(50)", small).order() == 50);
  }

  TEST_CASE("characteristic") {
    CHECK(characteristic(ring("Z(6)")) == 6);
    CHECK(characteristic(ring("M(2,Z(3))")) == 3);
    CHECK(characteristic(ring("prod(Z(2),Z(3))")) == 6);
    CHECK(characteristic(ring("sub(Z(9);3)")) == 3);
    CHECK(characteristic(ring("Z(1)")) == 1);
  }

  TEST_CASE("scalar algebras record torsion and the domain flag") {
    const StarRing m23 = ring("M(2,Z(3))");
    const auto over3 = build_scalar_algebra(m23, ring("Z(3)"), NaturalAction{});
    CHECK(over3.torsion_free());
    CHECK(over3.scalars_domain());
    const auto over6 = build_scalar_algebra(m23, ring("Z(6)"), NaturalAction{});
    CHECK_FALSE(over6.torsion_free());
    CHECK_FALSE(over6.scalars_domain());
    const auto z6 = build_scalar_algebra(ring("Z(6)"), ring("Z(6)"), NaturalAction{});
    CHECK_FALSE(z6.torsion_free());
    CHECK(z6.act(2, 3) == 0);
  }

  TEST_CASE("natural action equals multiplication by the residue mod the characteristic") {
    const StarRing r = ring("M(2,Z(3))");
    const auto alg = build_scalar_algebra(r, ring("Z(6)"), NaturalAction{});
    for (Index lambda = 0; lambda < 6; ++lambda) {
      for (Index a = 0; a < r.order(); ++a) CHECK(alg.act(lambda, a) == scalar_multiple(r, lambda % 3, a));
    }
  }

  TEST_CASE("scalar algebra errors") {
    try {
      build_scalar_algebra(ring("M(2,Z(3))"), ring("Z(4)"), NaturalAction{});
      FAIL("expected a characteristic mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CharacteristicMismatch);
    }
    // λ·a = a for every λ breaks (λ + μ)a = λa + μa.
    const StarRing r = ring("Z(3)");
    ExplicitAction constant;
    for (Index lambda = 0; lambda < 3; ++lambda) {
      for (Index a = 0; a < 3; ++a) constant.table.push_back(a);
    }
    try {
      build_scalar_algebra(r, r, constant);
      FAIL("expected an action axiom violation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ActionAxiomViolation);
    }
    // A non-unital K is refused.
    CHECK_THROWS_AS(build_scalar_algebra(r, ring("sub(Z(9);3)"), NaturalAction{}), Error);
  }
}
