#include "fluxatom/errors.hpp"

namespace fluxatom {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonUnitaryS: return "NonUnitaryS";
    case Errc::ZeroAlpha: return "ZeroAlpha";
    case Errc::NonPositiveFrequency: return "NonPositiveFrequency";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::StateOutOfDomain: return "StateOutOfDomain";
    case Errc::NonFinite: return "NonFinite";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::ZeroDrive: return "ZeroDrive";
    case Errc::ForwardDirection: return "ForwardDirection";
    case Errc::TruncationTooCoarse: return "TruncationTooCoarse";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::Gamma2Mismatch: return "Gamma2Mismatch";
    case Errc::ClosedFormMismatch: return "ClosedFormMismatch";
    case Errc::FanoIdentityMismatch: return "FanoIdentityMismatch";
  }
  return "UnknownError";
}

bool errc_is_internal(Errc c) {
  switch (c) {
    case Errc::Gamma2Mismatch:
    case Errc::ClosedFormMismatch:
    case Errc::FanoIdentityMismatch:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc c, const std::string& msg)
    : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}

void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace fluxatom
