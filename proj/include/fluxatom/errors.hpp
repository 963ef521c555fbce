#pragma once

#include <stdexcept>
#include <string>

namespace fluxatom {

enum class Errc {
  NonUnitaryS,
  ZeroAlpha,
  NonPositiveFrequency,
  DimensionMismatch,
  StateOutOfDomain,
  NonFinite,
  StepTooLarge,
  ZeroDrive,
  ForwardDirection,
  TruncationTooCoarse,
  SingularMatrix,
  ParseError,
  SchemaError,
  Gamma2Mismatch,
  ClosedFormMismatch,
  FanoIdentityMismatch,
};

const char* errc_name(Errc c);

// Internal cross-check failures: consistency between two evaluation routes
// broke down, which means a bug in this library rather than bad input.
bool errc_is_internal(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc c, const std::string& msg);

}  // namespace fluxatom
