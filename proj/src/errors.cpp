#include "padic_tate/errors.hpp"

namespace padic_tate {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleDefiningPolynomial: return "ReducibleDefiningPolynomial";
    case ErrorKind::NonUnitEisensteinConstant: return "NonUnitEisensteinConstant";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByImpreciseZero: return "DivisionByImpreciseZero";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DenominatorNotInvertible: return "DenominatorNotInvertible";
    case ErrorKind::OutsideConvergenceDomain: return "OutsideConvergenceDomain";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::AmbiguousAtPrecision: return "AmbiguousAtPrecision";
    case ErrorKind::NonpositiveValuation: return "NonpositiveValuation";
    case ErrorKind::ImpreciseValuation: return "ImpreciseValuation";
    case ErrorKind::OnKernel: return "OnKernel";
    case ErrorKind::OffCurveInput: return "OffCurveInput";
    case ErrorKind::PrecisionCollapse: return "PrecisionCollapse";
    case ErrorKind::MemberOfC: return "MemberOfC";
    case ErrorKind::ImpreciseDistance: return "ImpreciseDistance";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FullRank: return "FullRank";
    case ErrorKind::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_precision_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByImpreciseZero:
    case ErrorKind::InsufficientPrecision:
    case ErrorKind::AmbiguousAtPrecision:
    case ErrorKind::ImpreciseValuation:
    case ErrorKind::PrecisionCollapse:
    case ErrorKind::ImpreciseDistance:
      return true;
    default:
      return false;
  }
}

}  // namespace padic_tate
