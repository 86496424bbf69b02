#include "starlab/ring_builder.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "starlab/error.hpp"
#include "starlab/parallel.hpp"

namespace starlab {

namespace {

constexpr Index kAbsent = std::numeric_limits<Index>::max();

class CyclicBackend final : public RingBackend {
 public:
  explicit CyclicBackend(std::uint64_t m) : m_(m) {}

  std::size_t order() const override { return static_cast<std::size_t>(m_); }
  Index add(Index a, Index b) const override { return static_cast<Index>((std::uint64_t{a} + b) % m_); }
  Index mul(Index a, Index b) const override { return static_cast<Index>((std::uint64_t{a} * b) % m_); }
  Index neg(Index a) const override { return static_cast<Index>((m_ - a) % m_); }
  Index star(Index a) const override { return a; }

  ElementLiteral literal(Index a) const override { return ElementLiteral::integer(a); }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    if (lit.kind != ElementLiteral::Kind::Integer || lit.value < 0 ||
        static_cast<std::uint64_t>(lit.value) >= m_) {
      return std::nullopt;
    }
    return static_cast<Index>(lit.value);
  }
  std::optional<Index> unity_hint() const override { return static_cast<Index>(1 % m_); }

 private:
  std::uint64_t m_;
};

// Square matrices over Z(m); involution is the transpose (the base involution
// is the identity).
class MatrixBackend final : public RingBackend {
 public:
  MatrixBackend(std::uint32_t n, std::uint64_t m, std::size_t order)
      : n_(n), cells_(std::size_t{n} * n), m_(m), order_(order), place_(cells_) {
    std::uint64_t p = 1;
    for (std::size_t k = 0; k < cells_; ++k) {
      place_[k] = p;
      p *= m_;
    }
    digits_.resize(order_ * cells_);
    for (std::size_t idx = 0; idx < order_; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < cells_; ++k) {
        digits_[idx * cells_ + k] = static_cast<std::uint32_t>(rest % m_);
        rest /= m_;
      }
    }
  }

  std::size_t order() const override { return order_; }

  Index add(Index a, Index b) const override {
    const auto* x = entries(a);
    const auto* y = entries(b);
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < cells_; ++k) idx += ((std::uint64_t{x[k]} + y[k]) % m_) * place_[k];
    return static_cast<Index>(idx);
  }

  Index mul(Index a, Index b) const override {
    const auto* x = entries(a);
    const auto* y = entries(b);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n_; ++k) acc = (acc + std::uint64_t{x[i * n_ + k]} * y[k * n_ + j]) % m_;
        idx += acc * place_[i * n_ + j];
      }
    }
    return static_cast<Index>(idx);
  }

  Index neg(Index a) const override {
    const auto* x = entries(a);
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < cells_; ++k) idx += ((m_ - x[k]) % m_) * place_[k];
    return static_cast<Index>(idx);
  }

  Index star(Index a) const override {
    const auto* x = entries(a);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) idx += std::uint64_t{x[j * n_ + i]} * place_[i * n_ + j];
    }
    return static_cast<Index>(idx);
  }

  ElementLiteral literal(Index a) const override {
    const auto* x = entries(a);
    std::vector<ElementLiteral> rows;
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<ElementLiteral> row;
      for (std::size_t j = 0; j < n_; ++j) row.push_back(ElementLiteral::integer(x[i * n_ + j]));
      rows.push_back(ElementLiteral::list(std::move(row)));
    }
    return ElementLiteral::list(std::move(rows));
  }

  std::optional<Index> find(const ElementLiteral& lit) const override {
    if (lit.kind != ElementLiteral::Kind::List || lit.items.size() != n_) return std::nullopt;
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& row = lit.items[i];
      if (row.kind != ElementLiteral::Kind::List || row.items.size() != n_) return std::nullopt;
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& cell = row.items[j];
        if (cell.kind != ElementLiteral::Kind::Integer || cell.value < 0 ||
            static_cast<std::uint64_t>(cell.value) >= m_) {
          return std::nullopt;
        }
        idx += static_cast<std::uint64_t>(cell.value) * place_[i * n_ + j];
      }
    }
    return static_cast<Index>(idx);
  }

  std::optional<Index> unity_hint() const override {
    if (m_ == 1) return Index{0};
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) idx += place_[i * n_ + i];
    return static_cast<Index>(idx);
  }

 private:
  const std::uint32_t* entries(Index a) const { return digits_.data() + std::size_t{a} * cells_; }

  std::size_t n_;
  std::size_t cells_;
  std::uint64_t m_;
  std::size_t order_;
  std::vector<std::uint64_t> place_;
  std::vector<std::uint32_t> digits_;
};

class ProductBackend final : public RingBackend {
 public:
  ProductBackend(StarRing left, StarRing right)
      : left_(std::move(left)), right_(std::move(right)), width_(right_.order()) {}

  std::size_t order() const override { return left_.order() * width_; }
  Index add(Index a, Index b) const override {
    return pack(left_.add(l(a), l(b)), right_.add(r(a), r(b)));
  }
  Index mul(Index a, Index b) const override {
    return pack(left_.mul(l(a), l(b)), right_.mul(r(a), r(b)));
  }
  Index neg(Index a) const override { return pack(left_.neg(l(a)), right_.neg(r(a))); }
  Index star(Index a) const override { return pack(left_.star(l(a)), right_.star(r(a))); }

  ElementLiteral literal(Index a) const override {
    return ElementLiteral::tuple(left_.literal(l(a)), right_.literal(r(a)));
  }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    if (lit.kind != ElementLiteral::Kind::Tuple || lit.items.size() != 2) return std::nullopt;
    auto a = left_.backend().find(lit.items[0]);
    auto b = right_.backend().find(lit.items[1]);
    if (!a || !b) return std::nullopt;
    return pack(*a, *b);
  }
  std::optional<Index> unity_hint() const override {
    if (left_.unity() && right_.unity()) return pack(*left_.unity(), *right_.unity());
    return std::nullopt;
  }

 private:
  Index l(Index a) const { return static_cast<Index>(a / width_); }
  Index r(Index a) const { return static_cast<Index>(a % width_); }
  Index pack(Index a, Index b) const { return static_cast<Index>(a * width_ + b); }

  StarRing left_;
  StarRing right_;
  std::size_t width_;
};

class SubringBackend final : public RingBackend {
 public:
  SubringBackend(StarRing parent, std::vector<Index> members)
      : parent_(std::move(parent)), members_(std::move(members)), local_(parent_.order(), kAbsent) {
    for (std::size_t i = 0; i < members_.size(); ++i) local_[members_[i]] = static_cast<Index>(i);
  }

  std::size_t order() const override { return members_.size(); }
  Index add(Index a, Index b) const override { return local_[parent_.add(members_[a], members_[b])]; }
  Index mul(Index a, Index b) const override { return local_[parent_.mul(members_[a], members_[b])]; }
  Index neg(Index a) const override { return local_[parent_.neg(members_[a])]; }
  Index star(Index a) const override { return local_[parent_.star(members_[a])]; }

  ElementLiteral literal(Index a) const override { return parent_.literal(members_[a]); }
  std::optional<Index> find(const ElementLiteral& lit) const override {
    auto p = parent_.backend().find(lit);
    if (!p || local_[*p] == kAbsent) return std::nullopt;
    return local_[*p];
  }

 private:
  StarRing parent_;
  std::vector<Index> members_;
  std::vector<Index> local_;
};

// Sampled audit used at construction. Exhaustive checks are validate_star_ring's job.
void guard_axioms(const StarRing& r) {
  const std::size_t n = r.order();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
  const std::size_t samples = std::min<std::size_t>(4096, n * n * n);
  for (std::size_t s = 0; s < samples; ++s) {
    const Index a = pick(rng), b = pick(rng), c = pick(rng);
    auto fail = [&](const char* axiom) {
      throw Error(ErrorCode::AxiomViolation, std::string(axiom) + " fails in " + r.label(), {a, b, c});
    };
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) fail("associativity");
    if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) fail("left-distributivity");
    if (r.star(r.mul(a, b)) != r.mul(r.star(b), r.star(a))) fail("star-anti-multiplicative");
    if (r.star(r.star(a)) != a) fail("star-involutive");
  }
}

StarRing build_unchecked(const RingDescriptor& d, const Limits& limits) {
  if (d.order_bound() > limits.max_order && d.kind() != RingDescriptor::Kind::Subring) {
    throw Error(ErrorCode::OrderCapExceeded,
                to_string(d) + " has " + std::to_string(d.order_bound()) + " elements, cap is " +
                    std::to_string(limits.max_order));
  }
  const std::string label = to_string(d);
  switch (d.kind()) {
    case RingDescriptor::Kind::Cyclic:
      return StarRing(std::make_shared<CyclicBackend>(d.modulus()), label, d, limits);
    case RingDescriptor::Kind::Matrix:
      return StarRing(std::make_shared<MatrixBackend>(d.size(), d.base().modulus(),
                                                      static_cast<std::size_t>(d.order_bound())),
                      label, d, limits);
    case RingDescriptor::Kind::Product:
      return StarRing(std::make_shared<ProductBackend>(build_unchecked(d.left(), limits),
                                                       build_unchecked(d.right(), limits)),
                      label, d, limits);
    case RingDescriptor::Kind::Subring: {
      StarRing parent = build_unchecked(d.parent(), limits);
      std::vector<Index> gens;
      for (const auto& lit : d.generators()) gens.push_back(parent.index_of(lit));
      auto members = subring_closure(parent, gens);
      return StarRing(std::make_shared<SubringBackend>(std::move(parent), std::move(members)), label, d,
                      limits);
    }
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown descriptor kind");
}

}  // namespace

StarRing build_ring(const RingDescriptor& d, const Limits& limits) {
  StarRing r = build_unchecked(d, limits);
  guard_axioms(r);
  return r;
}

std::vector<Index> subring_closure(const StarRing& parent, std::span<const Index> generators) {
  std::vector<bool> in(parent.order(), false);
  std::vector<Index> members;
  auto insert = [&](Index x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  insert(StarRing::zero());
  for (auto g : generators) insert(g);
  // members[0..done) have been combined with each other
  for (std::size_t done = 0; done < members.size(); ++done) {
    const Index x = members[done];
    insert(parent.neg(x));
    insert(parent.star(x));
    for (std::size_t j = 0; j <= done; ++j) {
      const Index y = members[j];
      insert(parent.add(x, y));
      insert(parent.mul(x, y));
      insert(parent.mul(y, x));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

PropertyReport validate_star_ring(const StarRing& r, const ScanOptions& opts) {
  PropertyReport report;
  report.ring = r.label();
  report.property = "star-ring-axioms";
  ReportTimer timer(report);
  const std::size_t n = r.order();

  struct Failure {
    std::string axiom;
    std::vector<Index> witness;
  };
  using Check2 = std::function<bool(Index, Index)>;
  using Check3 = std::function<bool(Index, Index, Index)>;

  auto scan1 = [&](const std::function<bool(Index)>& ok) -> std::optional<std::vector<Index>> {
    auto hit = parallel_find_first(n, opts.jobs, [&](std::size_t a) { return !ok(static_cast<Index>(a)); });
    if (hit) return std::vector<Index>{static_cast<Index>(*hit)};
    return std::nullopt;
  };
  auto scan2 = [&](const Check2& ok) -> std::optional<std::vector<Index>> {
    auto hit = parallel_find_first(n, opts.jobs, [&](std::size_t a) {
      for (Index b = 0; b < n; ++b) {
        if (!ok(static_cast<Index>(a), b)) return true;
      }
      return false;
    });
    if (!hit) return std::nullopt;
    const auto a = static_cast<Index>(*hit);
    for (Index b = 0; b < n; ++b) {
      if (!ok(a, b)) return std::vector<Index>{a, b};
    }
    return std::nullopt;
  };
  auto scan3 = [&](const Check3& ok) -> std::optional<std::vector<Index>> {
    auto hit = parallel_find_first(n, opts.jobs, [&](std::size_t a) {
      for (Index b = 0; b < n; ++b) {
        for (Index c = 0; c < n; ++c) {
          if (!ok(static_cast<Index>(a), b, c)) return true;
        }
      }
      return false;
    });
    if (!hit) return std::nullopt;
    const auto a = static_cast<Index>(*hit);
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (!ok(a, b, c)) return std::vector<Index>{a, b, c};
      }
    }
    return std::nullopt;
  };

  std::optional<Failure> failure;
  auto run = [&](const char* axiom, std::optional<std::vector<Index>> w) {
    if (!failure && w) failure = Failure{axiom, std::move(*w)};
  };

  run("additive-identity", scan1([&](Index a) { return r.add(a, 0) == a && r.add(0, a) == a; }));
  if (!failure) run("additive-inverse", scan1([&](Index a) { return r.add(a, r.neg(a)) == 0; }));
  if (!failure) run("additive-commutativity", scan2([&](Index a, Index b) { return r.add(a, b) == r.add(b, a); }));
  if (!failure) {
    run("additive-associativity",
        scan3([&](Index a, Index b, Index c) { return r.add(r.add(a, b), c) == r.add(a, r.add(b, c)); }));
  }
  if (!failure) {
    run("associativity",
        scan3([&](Index a, Index b, Index c) { return r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)); }));
  }
  if (!failure) {
    run("left-distributivity", scan3([&](Index a, Index b, Index c) {
          return r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
        }));
  }
  if (!failure) {
    run("right-distributivity", scan3([&](Index a, Index b, Index c) {
          return r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c));
        }));
  }
  if (!failure) run("star-involutive", scan1([&](Index a) { return r.star(r.star(a)) == a; }));
  if (!failure) {
    run("star-additive",
        scan2([&](Index a, Index b) { return r.star(r.add(a, b)) == r.add(r.star(a), r.star(b)); }));
  }
  if (!failure) {
    run("star-anti-multiplicative",
        scan2([&](Index a, Index b) { return r.star(r.mul(a, b)) == r.mul(r.star(b), r.star(a)); }));
  }
  if (!failure && r.unity()) {
    const Index u = *r.unity();
    run("unity", scan1([&](Index a) { return r.mul(u, a) == a && r.mul(a, u) == a; }));
  }

  report.verdict = !failure.has_value();
  if (failure) {
    report.detail = failure->axiom;
    report.set_witness(r, failure->witness);
  }
  return report;
}

std::uint64_t characteristic(const StarRing& r) {
  std::uint64_t result = 1;
  for (Index x = 0; x < r.order(); ++x) {
    std::uint64_t additive_order = 1;
    for (Index y = x; y != StarRing::zero(); y = r.add(y, x)) ++additive_order;
    result = std::lcm(result, additive_order);
  }
  return result;
}

}  // namespace starlab
