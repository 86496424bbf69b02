#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "starlab/types.hpp"

namespace starlab {

enum class ErrorCode {
  ParseError,
  InvalidDescriptor,
  InvalidElement,
  OrderCapExceeded,
  AxiomViolation,
  ActionAxiomViolation,
  CharacteristicMismatch,
  NoRightProjection,
  AmbiguousRightProjection,
  NoLeftProjection,
  AmbiguousLeftProjection,
  NoCentralCover,
  NoGreatestElement,
  FamilyCapExceeded,
  HypothesisNotMet,
  InvolutionNotWellDefined,
  FormulaMismatch,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `witness` holds element indices of the
/// ring the failing operation ran on; `detail` is a human readable rendering.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::vector<Index> witness = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<Index>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::vector<Index> witness_;
};

/// Parse failures carry the byte offset and the set of tokens that would have
/// been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace starlab
