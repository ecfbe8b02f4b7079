#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksplit {

enum class ErrorKind {
  InvalidGroup,
  InvalidHom,
  ShapeMismatch,
  AmbientMismatch,
  NotContained,
  IndexOutOfRange,
  NotExact,
  SizeBoundExceeded,
  PartialNotASplitting,
  InvalidTau,
  UnknownNode,
  NotHereditary,
  NotBelow,
  NotComaximal,
  InvalidLattice,
  InvalidInstance,
  MissingMap,
  MissingSigma,
  GammaNotSurjective,
  WellDefinednessViolation,
  NoExtension,
  PairingNotRespected,
  SplittingConstructionFailure,
  NonMonotoneSpec,
  DefectNotApplicable,
  BadParameter,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception. The kind is
/// what callers dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the ideal-splitting builder when a step cannot be completed.
/// Carries the ideal at which the induction stopped.
class NoExtensionError : public Error {
 public:
  NoExtensionError(std::string ideal, const std::string& message);

  const std::string& ideal() const noexcept { return ideal_; }

 private:
  std::string ideal_;
};

}  // namespace ksplit
