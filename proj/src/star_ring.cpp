#include "starlab/star_ring.hpp"

#include "starlab/error.hpp"

namespace starlab {

namespace {

std::optional<Index> search_unity(const RingBackend& backend, std::size_t n,
                                  const std::vector<Index>* mul_table) {
  auto mul = [&](Index a, Index b) {
    return mul_table ? (*mul_table)[a * n + b] : backend.mul(a, b);
  };
  auto is_identity = [&](Index u) {
    for (Index x = 0; x < n; ++x) {
      if (mul(u, x) != x || mul(x, u) != x) return false;
    }
    return true;
  };
  if (auto hint = backend.unity_hint(); hint && *hint < n && is_identity(*hint)) return hint;
  for (Index u = 0; u < n; ++u) {
    if (is_identity(u)) return u;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::ActionAxiomViolation: return "ActionAxiomViolation";
    case ErrorCode::CharacteristicMismatch: return "CharacteristicMismatch";
    case ErrorCode::NoRightProjection: return "NoRightProjection";
    case ErrorCode::AmbiguousRightProjection: return "AmbiguousRightProjection";
    case ErrorCode::NoLeftProjection: return "NoLeftProjection";
    case ErrorCode::AmbiguousLeftProjection: return "AmbiguousLeftProjection";
    case ErrorCode::NoCentralCover: return "NoCentralCover";
    case ErrorCode::NoGreatestElement: return "NoGreatestElement";
    case ErrorCode::FamilyCapExceeded: return "FamilyCapExceeded";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::InvolutionNotWellDefined: return "InvolutionNotWellDefined";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string detail, std::vector<Index> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)),
      witness_(std::move(witness)) {}

namespace {

std::string describe_parse_error(std::size_t offset, const std::vector<std::string>& expected,
                                 const std::string& found) {
  std::string s = "at offset " + std::to_string(offset) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) s += " or ";
    s += "'" + expected[i] + "'";
  }
  return s + ", found " + found;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : Error(ErrorCode::ParseError, describe_parse_error(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

StarRing::StarRing(std::shared_ptr<const RingBackend> backend, std::string label,
                   std::optional<RingDescriptor> descriptor, const Limits& limits) {
  auto state = std::make_shared<State>();
  const std::size_t n = backend->order();
  if (n == 0) throw Error(ErrorCode::InvalidDescriptor, "empty carrier");
  if (n > limits.max_order) {
    throw Error(ErrorCode::OrderCapExceeded,
                label + " has " + std::to_string(n) + " elements, cap is " + std::to_string(limits.max_order));
  }
  state->order = n;
  state->neg.resize(n);
  state->star.resize(n);
  for (Index a = 0; a < n; ++a) {
    state->neg[a] = backend->neg(a);
    state->star[a] = backend->star(a);
  }
  if (n * n <= limits.table_threshold) {
    state->tabulated = true;
    state->add.resize(n * n);
    state->mul.resize(n * n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        state->add[a * n + b] = backend->add(a, b);
        state->mul[a * n + b] = backend->mul(a, b);
      }
    }
  }
  state->unity = search_unity(*backend, n, state->tabulated ? &state->mul : nullptr);
  state->backend = std::move(backend);
  state->label = std::move(label);
  state->descriptor = std::move(descriptor);
  state_ = std::move(state);
}

Index StarRing::index_of(const ElementLiteral& lit) const {
  if (auto idx = state_->backend->find(lit)) return *idx;
  throw Error(ErrorCode::InvalidElement, "'" + to_string(lit) + "' is not an element of " + label());
}

Index scalar_multiple(const StarRing& ring, std::uint64_t k, Index x) {
  Index result = StarRing::zero();
  Index base = x;
  while (k != 0) {
    if (k & 1U) result = ring.add(result, base);
    base = ring.add(base, base);
    k >>= 1U;
  }
  return result;
}

}  // namespace starlab
