#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic_tate {

enum class ErrorKind {
  // field construction
  NotPrime,
  ReducibleDefiningPolynomial,
  NonUnitEisensteinConstant,
  // arithmetic
  FieldMismatch,
  DivisionByImpreciseZero,
  InsufficientPrecision,
  ZeroElement,
  // literals
  SyntaxError,
  DenominatorNotInvertible,
  // series
  OutsideConvergenceDomain,
  NotRegular,
  DegreeCapExceeded,
  AmbiguousAtPrecision,
  // tate
  NonpositiveValuation,
  ImpreciseValuation,
  OnKernel,
  OffCurveInput,
  PrecisionCollapse,
  // balls
  MemberOfC,
  ImpreciseDistance,
  // lattices
  DimensionMismatch,
  FullRank,
  InconsistentDimensions,
  SearchSpaceTooLarge,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for the error kinds that signal a shortage of p-adic precision
/// rather than malformed input. The CLI maps these to exit status 3.
bool is_precision_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace padic_tate
