#include "starlab/corpus.hpp"

#include <set>
#include <string>

#include "starlab/error.hpp"

namespace starlab {

namespace {

RingDescriptor z(std::uint64_t m) { return RingDescriptor::cyclic(m); }
RingDescriptor mat(std::uint32_t n, std::uint64_t m) { return RingDescriptor::matrix(n, z(m)); }
RingDescriptor prod(RingDescriptor l, RingDescriptor r) { return RingDescriptor::product(std::move(l), std::move(r)); }
RingDescriptor sub(RingDescriptor parent, std::vector<std::int64_t> gens) {
  std::vector<ElementLiteral> lits;
  for (auto g : gens) lits.push_back(ElementLiteral::integer(g));
  return RingDescriptor::subring(std::move(parent), std::move(lits));
}

std::vector<RingDescriptor> small_rings() {
  std::vector<RingDescriptor> out;
  for (std::uint64_t m = 2; m <= 16; ++m) out.push_back(z(m));
  out.push_back(sub(z(4), {2}));
  out.push_back(sub(z(9), {3}));
  out.push_back(sub(z(8), {2}));
  out.push_back(sub(z(8), {4}));
  out.push_back(sub(z(16), {4}));
  out.push_back(sub(z(12), {6}));
  out.push_back(sub(z(12), {4}));
  out.push_back(prod(z(2), z(3)));
  out.push_back(prod(z(2), z(2)));
  out.push_back(prod(z(3), z(3)));
  out.push_back(prod(z(2), z(4)));
  out.push_back(prod(z(4), z(9)));
  out.push_back(prod(z(2), sub(z(9), {3})));
  out.push_back(mat(2, 2));
  out.push_back(mat(2, 3));
  RingDescriptor m23 = mat(2, 3);
  out.push_back(RingDescriptor::subring(
      m23, {ElementLiteral::list({ElementLiteral::list({ElementLiteral::integer(1), ElementLiteral::integer(0)}),
                                  ElementLiteral::list({ElementLiteral::integer(0), ElementLiteral::integer(0)})})}));
  return out;
}

std::vector<RingDescriptor> medium_rings() {
  auto out = small_rings();
  for (std::uint64_t m = 17; m <= 30; m += 1) {
    if (m == 17 || m == 18 || m == 21 || m == 25 || m == 30) out.push_back(z(m));
  }
  for (std::uint64_t m = 4; m <= 7; ++m) out.push_back(mat(2, m));
  out.push_back(mat(3, 2));
  out.push_back(prod(z(3), mat(2, 2)));
  out.push_back(prod(z(2), mat(2, 3)));
  out.push_back(prod(z(5), z(7)));
  out.push_back(prod(sub(z(4), {2}), z(5)));
  return out;
}

std::vector<RingDescriptor> dedupe(std::vector<RingDescriptor> rings) {
  std::set<std::string> seen;
  std::vector<RingDescriptor> out;
  for (auto& d : rings) {
    if (seen.insert(descriptor_hash(d)).second) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& corpus_profiles() {
  static const std::vector<std::string_view> names{"small", "medium", "all-cyclic"};
  return names;
}

std::vector<RingDescriptor> generate_corpus(std::string_view profile) {
  if (profile == "small") return dedupe(small_rings());
  if (profile == "medium") return dedupe(medium_rings());
  if (profile == "all-cyclic") {
    std::vector<RingDescriptor> out;
    for (std::uint64_t m = 2; m <= 30; ++m) out.push_back(z(m));
    return dedupe(std::move(out));
  }
  throw Error(ErrorCode::InvalidDescriptor, "unknown corpus profile '" + std::string(profile) + "'");
}

}  // namespace starlab
