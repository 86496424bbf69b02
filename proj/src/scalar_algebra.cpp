#include "starlab/scalar_algebra.hpp"

#include <optional>
#include <string>

#include "starlab/error.hpp"
#include "starlab/parallel.hpp"
#include "starlab/ring_builder.hpp"

namespace starlab {

namespace {

[[noreturn]] void violation(const std::string& axiom, std::vector<Index> witness) {
  throw Error(ErrorCode::ActionAxiomViolation, axiom, std::move(witness));
}

}  // namespace

ScalarAlgebra build_scalar_algebra(const StarRing& r, const StarRing& k, const ActionSpec& action,
                                   const ScanOptions& opts) {
  const std::size_t n = r.order();
  const std::size_t kn = k.order();

  if (!k.unity()) violation("scalar ring " + k.label() + " has no unity", {});
  for (Index a = 0; a < kn; ++a) {
    for (Index b = a + 1; b < kn; ++b) {
      if (k.mul(a, b) != k.mul(b, a)) violation("scalar ring " + k.label() + " is not commutative", {a, b});
    }
  }

  ScalarAlgebra alg(r, k);
  alg.scalar_unity_ = *k.unity();
  alg.action_.resize(kn * n);

  if (std::holds_alternative<NaturalAction>(action)) {
    const auto& kd = k.descriptor();
    if (!kd || kd->kind() != RingDescriptor::Kind::Cyclic) {
      throw Error(ErrorCode::HypothesisNotMet, "the natural action needs K = Z(m), got " + k.label());
    }
    const std::uint64_t m = kd->modulus();
    const std::uint64_t ch = characteristic(r);
    if (m % ch != 0) {
      throw Error(ErrorCode::CharacteristicMismatch,
                  "characteristic of " + r.label() + " is " + std::to_string(ch) + ", which does not divide " +
                      std::to_string(m));
    }
    for (Index lambda = 0; lambda < kn; ++lambda) {
      for (Index a = 0; a < n; ++a) alg.action_[std::size_t{lambda} * n + a] = scalar_multiple(r, lambda, a);
    }
  } else {
    const auto& table = std::get<ExplicitAction>(action).table;
    if (table.size() != kn * n) {
      violation("action table has " + std::to_string(table.size()) + " entries, expected " +
                    std::to_string(kn * n),
                {});
    }
    for (auto v : table) {
      if (v >= n) violation("action table entry out of range", {});
    }
    alg.action_ = table;
  }

  auto act = [&](Index lambda, Index a) { return alg.action_[std::size_t{lambda} * n + a]; };
  const Index one = alg.scalar_unity_;

  // Lowest (λ, a) in scan order failing `ok`; b-loops live inside `ok`.
  auto first_failure = [&](auto&& ok) -> std::optional<std::pair<Index, Index>> {
    auto hit = parallel_find_first(kn * n, opts.jobs, [&](std::size_t i) {
      return !ok(static_cast<Index>(i / n), static_cast<Index>(i % n));
    });
    if (!hit) return std::nullopt;
    return std::pair{static_cast<Index>(*hit / n), static_cast<Index>(*hit % n)};
  };
  auto first_b = [&](Index lambda, Index a, auto&& ok) {
    for (Index b = 0; b < n; ++b) {
      if (!ok(lambda, a, b)) return b;
    }
    return Index{0};
  };

  for (Index a = 0; a < n; ++a) {
    if (act(one, a) != a) violation("1a = a", {one, a});
  }

  auto additive_in_ring = [&](Index lambda, Index a, Index b) {
    return act(lambda, r.add(a, b)) == r.add(act(lambda, a), act(lambda, b));
  };
  auto scalar_assoc = [&](Index lambda, Index a, Index b) {
    const Index lhs = act(lambda, r.mul(a, b));
    return lhs == r.mul(act(lambda, a), b) && lhs == r.mul(a, act(lambda, b));
  };
  auto additive_in_scalar = [&](Index lambda, Index a, Index mu) {
    return act(k.add(lambda, mu), a) == r.add(act(lambda, a), act(mu, a));
  };
  auto multiplicative_in_scalar = [&](Index lambda, Index a, Index mu) {
    return act(k.mul(lambda, mu), a) == act(lambda, act(mu, a));
  };

  if (auto f = first_failure([&](Index l, Index a) {
        for (Index b = 0; b < n; ++b) {
          if (!additive_in_ring(l, a, b)) return false;
        }
        return true;
      })) {
    violation("λ(a+b) = λa + λb", {f->first, f->second, first_b(f->first, f->second, additive_in_ring)});
  }
  if (auto f = first_failure([&](Index l, Index a) {
        for (Index mu = 0; mu < kn; ++mu) {
          if (!additive_in_scalar(l, a, mu) || !multiplicative_in_scalar(l, a, mu)) return false;
        }
        return true;
      })) {
    for (Index mu = 0; mu < kn; ++mu) {
      if (!additive_in_scalar(f->first, f->second, mu)) violation("(λ+μ)a = λa + μa", {f->first, mu, f->second});
      if (!multiplicative_in_scalar(f->first, f->second, mu)) violation("(λμ)a = λ(μa)", {f->first, mu, f->second});
    }
  }
  if (auto f = first_failure([&](Index l, Index a) {
        for (Index b = 0; b < n; ++b) {
          if (!scalar_assoc(l, a, b)) return false;
        }
        return true;
      })) {
    violation("λ(ab) = (λa)b = a(λb)", {f->first, f->second, first_b(f->first, f->second, scalar_assoc)});
  }
  if (auto f = first_failure([&](Index l, Index a) { return r.star(act(l, a)) == act(k.star(l), r.star(a)); })) {
    violation("(λa)* = λ*a*", {f->first, f->second});
  }

  alg.torsion_free_ = true;
  for (Index lambda = 1; lambda < kn && alg.torsion_free_; ++lambda) {
    for (Index a = 1; a < n; ++a) {
      if (act(lambda, a) == StarRing::zero()) {
        alg.torsion_free_ = false;
        break;
      }
    }
  }

  alg.scalars_domain_ = one != StarRing::zero();
  for (Index a = 1; a < kn && alg.scalars_domain_; ++a) {
    for (Index b = 1; b < kn; ++b) {
      if (k.mul(a, b) == StarRing::zero()) {
        alg.scalars_domain_ = false;
        break;
      }
    }
  }
  return alg;
}

}  // namespace starlab
