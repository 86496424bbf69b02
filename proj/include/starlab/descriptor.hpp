#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace starlab {

/// Structural name of an element: an integer residue, a bracketed list (matrix
/// rows), or a pair written `(l, r)`.
struct ElementLiteral {
  enum class Kind { Integer, List, Tuple };

  Kind kind = Kind::Integer;
  std::int64_t value = 0;
  std::vector<ElementLiteral> items;

  static ElementLiteral integer(std::int64_t v) { return {Kind::Integer, v, {}}; }
  static ElementLiteral list(std::vector<ElementLiteral> xs) { return {Kind::List, 0, std::move(xs)}; }
  static ElementLiteral tuple(ElementLiteral l, ElementLiteral r) {
    return {Kind::Tuple, 0, {std::move(l), std::move(r)}};
  }

  bool operator==(const ElementLiteral&) const = default;
};

std::string to_string(const ElementLiteral& lit);

/// JSON form: integers are numbers, lists are arrays, pairs are {"pair": [l, r]}.
nlohmann::json to_json(const ElementLiteral& lit);
ElementLiteral literal_from_json(const nlohmann::json& j);

/// Constructor tree of a finite ring with its fixed involution.
class RingDescriptor {
 public:
  enum class Kind { Cyclic, Matrix, Product, Subring };

  static RingDescriptor cyclic(std::uint64_t modulus);
  static RingDescriptor matrix(std::uint32_t size, RingDescriptor base);
  static RingDescriptor product(RingDescriptor left, RingDescriptor right);
  static RingDescriptor subring(RingDescriptor parent, std::vector<ElementLiteral> generators);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return size_; }
  const RingDescriptor& base() const { return children_.at(0); }
  const RingDescriptor& left() const { return children_.at(0); }
  const RingDescriptor& right() const { return children_.at(1); }
  const RingDescriptor& parent() const { return children_.at(0); }
  const std::vector<ElementLiteral>& generators() const noexcept { return generators_; }

  /// Carrier size implied by the tree, or an upper bound for subrings
  /// (the parent's size). Saturates at UINT64_MAX.
  std::uint64_t order_bound() const;

  bool operator==(const RingDescriptor&) const = default;

 private:
  Kind kind_ = Kind::Cyclic;
  std::uint64_t modulus_ = 1;
  std::uint32_t size_ = 0;
  std::vector<RingDescriptor> children_;
  std::vector<ElementLiteral> generators_;
};

/// Canonical DSL text, e.g. `M(2,Z(3))`, `sub(Z(9);3)`.
std::string to_string(const RingDescriptor& d);

nlohmann::json to_json(const RingDescriptor& d);
RingDescriptor descriptor_from_json(const nlohmann::json& j);

/// Stable 64-bit FNV-1a hash of the canonical text, as 16 hex digits.
std::string descriptor_hash(const RingDescriptor& d);

}  // namespace starlab
