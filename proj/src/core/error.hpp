#pragma once

#include <stdexcept>
#include <string>

namespace geocoil {

enum class Errc {
  InvalidArgument,
  NonConvergence,
  DegenerateGradient,
  FramePole,
  StepFailure,
  TooShort,
  DegenerateEpsilon,
  Marginal,
  NotStationary,
  UnresolvedEdge,
  AsymmetricInput,
  UnknownCounts,
  Consistency,
  VariantMismatch,
  AllZero,
  Io,
};

/// Library error carrying a machine-readable condition next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace geocoil
