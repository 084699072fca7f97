#include "padic_tate/rv.hpp"

#include "padic_tate/errors.hpp"

namespace padic_tate {

RVClass rv_class(const Element& x, const Rational& lambda) {
  if (lambda < Rational(0)) throw Error(ErrorKind::InvalidArgument, "lambda must be non-negative");
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "rv class of an imprecise zero");
  const long e = x.field()->ramified_layout() ? x.field()->e() : 1;
  const long depth = (lambda * Rational(e)).floor();
  if (depth + 1 > x.rel_prec()) {
    throw Error(ErrorKind::InsufficientPrecision,
                "rv class needs " + std::to_string(depth + 1) + " unit digits, only " +
                    std::to_string(x.rel_prec()) + " known");
  }
  return RVClass{x.valuation().value, x.digits(depth + 1), lambda};
}

}  // namespace padic_tate
