#pragma once

#include <string_view>

#include "starlab/descriptor.hpp"

namespace starlab {

/// Largest accepted input, in bytes.
inline constexpr std::size_t kMaxExpressionBytes = 64 * 1024;

/// Ring expressions:
///   expr    := 'Z(' int ')' | 'M(' int ',' expr ')' | 'prod(' expr ',' expr ')'
///            | 'sub(' expr ';' literal {',' literal} ')'
///   literal := int | '[' literal {',' literal} ']' | '(' literal ',' literal ')'
/// Whitespace is insignificant. Throws ParseError with a byte offset.
RingDescriptor parse_ring_expr(std::string_view text);

/// Element literal on its own, e.g. `[[0,1],[0,0]]` or `(1, 0)`.
ElementLiteral parse_element_literal(std::string_view text);

}  // namespace starlab
