#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polchange {

enum class ErrorCode {
  NotPositiveDefinite,
  NotHermitian,
  DimensionMismatch,
  DomainError,
  NoConvergence,
  EmptySample,
  RegionTooSmall,
  GeometryMismatch,
  DegenerateDenominator,
  BadMagic,
  TruncatedPayload,
  NonHermitianPixel,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace polchange
