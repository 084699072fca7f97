#pragma once

#include <vector>

#include "padic_tate/element.hpp"
#include "padic_tate/rational.hpp"

namespace padic_tate {

/// Leading-term class of a nonzero element in K^x / (1 + B_{>lambda}(0)).
///
/// Two elements share a class iff v(x - y) > v(x) + lambda. The class is
/// pinned down by the valuation together with the pi-adic digits of the
/// unit part up to depth floor(lambda * e) inclusive.
struct RVClass {
  Rational valuation;
  std::vector<ResidueDigit> leading_digits;
  Rational lambda;

  friend bool operator==(const RVClass&, const RVClass&) = default;
};

/// Throws ZeroElement for an imprecise zero and InsufficientPrecision when
/// fewer than floor(lambda * e) + 1 unit digits are known.
RVClass rv_class(const Element& x, const Rational& lambda);

}  // namespace padic_tate
