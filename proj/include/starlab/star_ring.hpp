#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starlab/descriptor.hpp"
#include "starlab/types.hpp"

namespace starlab {

/// Structural arithmetic behind a StarRing. Implementations compute on the
/// element codec; StarRing decides whether to tabulate the results.
class RingBackend {
 public:
  virtual ~RingBackend() = default;

  virtual std::size_t order() const = 0;
  virtual Index add(Index a, Index b) const = 0;
  virtual Index mul(Index a, Index b) const = 0;
  virtual Index neg(Index a) const = 0;
  virtual Index star(Index a) const = 0;

  virtual ElementLiteral literal(Index a) const = 0;
  /// Index of the element named by `lit`, if it names one.
  virtual std::optional<Index> find(const ElementLiteral& lit) const = 0;

  /// Known two-sided identity, if the constructor knows one without a search.
  virtual std::optional<Index> unity_hint() const { return std::nullopt; }
};

/// Immutable finite ring with involution on the carrier {0, ..., order-1}.
/// Copies share state; safe for concurrent reads.
class StarRing {
 public:
  StarRing(std::shared_ptr<const RingBackend> backend, std::string label,
           std::optional<RingDescriptor> descriptor, const Limits& limits = {});

  std::size_t order() const noexcept { return state_->order; }

  Index add(Index a, Index b) const {
    return state_->tabulated ? state_->add[a * state_->order + b] : state_->backend->add(a, b);
  }
  Index mul(Index a, Index b) const {
    return state_->tabulated ? state_->mul[a * state_->order + b] : state_->backend->mul(a, b);
  }
  Index neg(Index a) const { return state_->neg[a]; }
  Index star(Index a) const { return state_->star[a]; }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }

  static constexpr Index zero() noexcept { return 0; }
  std::optional<Index> unity() const noexcept { return state_->unity; }

  bool tabulated() const noexcept { return state_->tabulated; }

  /// DSL text for descriptor-built rings, a derived label otherwise.
  const std::string& label() const noexcept { return state_->label; }
  const std::optional<RingDescriptor>& descriptor() const noexcept { return state_->descriptor; }

  ElementLiteral literal(Index a) const { return state_->backend->literal(a); }
  std::string format(Index a) const { return to_string(literal(a)); }
  /// Throws Error(InvalidElement) when `lit` does not name an element.
  Index index_of(const ElementLiteral& lit) const;

  const RingBackend& backend() const noexcept { return *state_->backend; }

 private:
  struct State {
    std::shared_ptr<const RingBackend> backend;
    std::string label;
    std::optional<RingDescriptor> descriptor;
    std::size_t order = 0;
    bool tabulated = false;
    std::vector<Index> add;
    std::vector<Index> mul;
    std::vector<Index> neg;
    std::vector<Index> star;
    std::optional<Index> unity;
  };
  std::shared_ptr<const State> state_;
};

/// Additive multiple k·x by repeated doubling.
Index scalar_multiple(const StarRing& ring, std::uint64_t k, Index x);

}  // namespace starlab
