#include "ksplit/error.hpp"

namespace ksplit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::InvalidHom: return "invalid-hom";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::AmbientMismatch: return "ambient-mismatch";
    case ErrorKind::NotContained: return "subgroup-not-contained";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::NotExact: return "not-exact";
    case ErrorKind::SizeBoundExceeded: return "size-bound-exceeded";
    case ErrorKind::PartialNotASplitting: return "partial-not-a-splitting";
    case ErrorKind::InvalidTau: return "invalid-tau";
    case ErrorKind::UnknownNode: return "unknown-node";
    case ErrorKind::NotHereditary: return "input-not-hereditary";
    case ErrorKind::NotBelow: return "node-not-below";
    case ErrorKind::NotComaximal: return "not-comaximal";
    case ErrorKind::InvalidLattice: return "invalid-lattice";
    case ErrorKind::InvalidInstance: return "invalid-instance";
    case ErrorKind::MissingMap: return "missing-map";
    case ErrorKind::MissingSigma: return "missing-sigma";
    case ErrorKind::GammaNotSurjective: return "gamma-not-surjective";
    case ErrorKind::WellDefinednessViolation: return "well-definedness-violation";
    case ErrorKind::NoExtension: return "no-extension";
    case ErrorKind::PairingNotRespected: return "pairing-not-respected";
    case ErrorKind::SplittingConstructionFailure: return "splitting-construction-failure";
    case ErrorKind::NonMonotoneSpec: return "non-monotone-spec";
    case ErrorKind::DefectNotApplicable: return "defect-not-applicable";
    case ErrorKind::BadParameter: return "bad-parameter";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

NoExtensionError::NoExtensionError(std::string ideal, const std::string& message)
    : Error(ErrorKind::NoExtension, message), ideal_(std::move(ideal)) {}

}  // namespace ksplit
