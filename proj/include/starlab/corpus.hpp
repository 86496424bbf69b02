#pragma once

#include <string_view>
#include <vector>

#include "starlab/descriptor.hpp"

namespace starlab {

/// Deterministic ring lists, duplicate-free by descriptor hash.
///   small       orders up to 256: Z(2..16), the zero-multiplication subrings,
///               small products and M(2,Z(2..3))
///   medium      orders up to 2500: small plus M(2,Z(4..7)), M(3,Z(2)) and larger products
///   all-cyclic  Z(2..30)
/// Throws InvalidDescriptor for other names.
std::vector<RingDescriptor> generate_corpus(std::string_view profile);

const std::vector<std::string_view>& corpus_profiles();

}  // namespace starlab
