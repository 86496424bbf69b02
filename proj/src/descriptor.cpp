#include "starlab/descriptor.hpp"

#include <cstdio>
#include <limits>

#include "starlab/error.hpp"

namespace starlab {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

std::string to_string(const ElementLiteral& lit) {
  switch (lit.kind) {
    case ElementLiteral::Kind::Integer:
      return std::to_string(lit.value);
    case ElementLiteral::Kind::List: {
      std::string s = "[";
      for (std::size_t i = 0; i < lit.items.size(); ++i) {
        if (i) s += ',';
        s += to_string(lit.items[i]);
      }
      return s + "]";
    }
    case ElementLiteral::Kind::Tuple:
      return "(" + to_string(lit.items.at(0)) + "," + to_string(lit.items.at(1)) + ")";
  }
  return {};
}

nlohmann::json to_json(const ElementLiteral& lit) {
  switch (lit.kind) {
    case ElementLiteral::Kind::Integer:
      return lit.value;
    case ElementLiteral::Kind::List: {
      auto arr = nlohmann::json::array();
      for (const auto& item : lit.items) arr.push_back(to_json(item));
      return arr;
    }
    case ElementLiteral::Kind::Tuple:
      return {{"pair", {to_json(lit.items.at(0)), to_json(lit.items.at(1))}}};
  }
  return nullptr;
}

ElementLiteral literal_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return ElementLiteral::integer(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<ElementLiteral> items;
    for (const auto& item : j) items.push_back(literal_from_json(item));
    return ElementLiteral::list(std::move(items));
  }
  if (j.is_object() && j.contains("pair") && j.at("pair").is_array() && j.at("pair").size() == 2) {
    return ElementLiteral::tuple(literal_from_json(j.at("pair")[0]), literal_from_json(j.at("pair")[1]));
  }
  throw Error(ErrorCode::InvalidElement, "malformed element literal JSON: " + j.dump());
}

RingDescriptor RingDescriptor::cyclic(std::uint64_t modulus) {
  if (modulus < 1) throw Error(ErrorCode::InvalidDescriptor, "Z(m) requires m >= 1");
  RingDescriptor d;
  d.kind_ = Kind::Cyclic;
  d.modulus_ = modulus;
  return d;
}

RingDescriptor RingDescriptor::matrix(std::uint32_t size, RingDescriptor base) {
  if (size < 1) throw Error(ErrorCode::InvalidDescriptor, "M(n, ...) requires n >= 1");
  if (base.kind() != Kind::Cyclic) {
    throw Error(ErrorCode::InvalidDescriptor, "matrix base must be Z(m), got " + to_string(base));
  }
  RingDescriptor d;
  d.kind_ = Kind::Matrix;
  d.size_ = size;
  d.children_.push_back(std::move(base));
  return d;
}

RingDescriptor RingDescriptor::product(RingDescriptor left, RingDescriptor right) {
  RingDescriptor d;
  d.kind_ = Kind::Product;
  d.children_.push_back(std::move(left));
  d.children_.push_back(std::move(right));
  return d;
}

RingDescriptor RingDescriptor::subring(RingDescriptor parent, std::vector<ElementLiteral> generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::InvalidDescriptor, "sub(...) requires at least one generator");
  }
  RingDescriptor d;
  d.kind_ = Kind::Subring;
  d.children_.push_back(std::move(parent));
  d.generators_ = std::move(generators);
  return d;
}

std::uint64_t RingDescriptor::order_bound() const {
  switch (kind_) {
    case Kind::Cyclic:
      return modulus_;
    case Kind::Matrix: {
      std::uint64_t order = 1;
      const std::uint64_t cells = std::uint64_t{size_} * size_;
      for (std::uint64_t i = 0; i < cells; ++i) order = saturating_mul(order, base().modulus());
      return order;
    }
    case Kind::Product:
      return saturating_mul(left().order_bound(), right().order_bound());
    case Kind::Subring:
      return parent().order_bound();
  }
  return 0;
}

std::string to_string(const RingDescriptor& d) {
  switch (d.kind()) {
    case RingDescriptor::Kind::Cyclic:
      return "Z(" + std::to_string(d.modulus()) + ")";
    case RingDescriptor::Kind::Matrix:
      return "M(" + std::to_string(d.size()) + "," + to_string(d.base()) + ")";
    case RingDescriptor::Kind::Product:
      return "prod(" + to_string(d.left()) + "," + to_string(d.right()) + ")";
    case RingDescriptor::Kind::Subring: {
      std::string s = "sub(" + to_string(d.parent()) + ";";
      for (std::size_t i = 0; i < d.generators().size(); ++i) {
        if (i) s += ',';
        s += to_string(d.generators()[i]);
      }
      return s + ")";
    }
  }
  return {};
}

nlohmann::json to_json(const RingDescriptor& d) {
  switch (d.kind()) {
    case RingDescriptor::Kind::Cyclic:
      return {{"kind", "cyclic"}, {"m", d.modulus()}};
    case RingDescriptor::Kind::Matrix:
      return {{"kind", "matrix"}, {"n", d.size()}, {"base", to_json(d.base())}};
    case RingDescriptor::Kind::Product:
      return {{"kind", "product"}, {"left", to_json(d.left())}, {"right", to_json(d.right())}};
    case RingDescriptor::Kind::Subring: {
      auto gens = nlohmann::json::array();
      for (const auto& g : d.generators()) gens.push_back(to_json(g));
      return {{"kind", "sub"}, {"parent", to_json(d.parent())}, {"generators", gens}};
    }
  }
  return nullptr;
}

RingDescriptor descriptor_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return RingDescriptor::cyclic(j.at("m").get<std::uint64_t>());
    if (kind == "matrix") {
      return RingDescriptor::matrix(j.at("n").get<std::uint32_t>(), descriptor_from_json(j.at("base")));
    }
    if (kind == "product") {
      return RingDescriptor::product(descriptor_from_json(j.at("left")), descriptor_from_json(j.at("right")));
    }
    if (kind == "sub") {
      std::vector<ElementLiteral> gens;
      for (const auto& g : j.at("generators")) gens.push_back(literal_from_json(g));
      return RingDescriptor::subring(descriptor_from_json(j.at("parent")), std::move(gens));
    }
    throw Error(ErrorCode::InvalidDescriptor, "unknown descriptor kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidDescriptor, std::string("malformed descriptor JSON: ") + e.what());
  }
}

std::string descriptor_hash(const RingDescriptor& d) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_string(d)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace starlab
