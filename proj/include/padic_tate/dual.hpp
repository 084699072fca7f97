#pragma once

#include <string>

#include "padic_tate/element.hpp"

namespace padic_tate {

/// value + deriv * eps with eps^2 = 0. Running an evaluator over these
/// yields f(x) and f'(x) together.
class DualElement {
 public:
  DualElement() = default;
  DualElement(Element value, Element deriv);

  /// (x, 1): the seed for differentiating with respect to x.
  static DualElement variable(const Element& x);
  /// (c, 0) with the zero derivative treated as exact.
  static DualElement constant(const Element& c);

  const Element& value() const { return value_; }
  const Element& deriv() const { return deriv_; }
  const Field& field() const { return value_.field(); }

  DualElement operator-() const;
  friend DualElement operator+(const DualElement& a, const DualElement& b);
  friend DualElement operator-(const DualElement& a, const DualElement& b);
  friend DualElement operator*(const DualElement& a, const DualElement& b);
  friend DualElement operator/(const DualElement& a, const DualElement& b);
  friend DualElement operator*(const DualElement& a, const Element& c);
  friend DualElement operator*(const Element& c, const DualElement& a) { return a * c; }

  DualElement inverse() const;
  DualElement pow(long k) const;
  DualElement mul_int(const mpz_class& n) const;
  DualElement div_int(const mpz_class& n) const;
  DualElement mul_int(long n) const { return mul_int(mpz_class(n)); }
  DualElement div_int(long n) const { return div_int(mpz_class(n)); }
  /// Caps both components at absolute precision prec.
  DualElement with_prec(long prec) const;

  std::string to_string() const;

 private:
  Element value_;
  Element deriv_;
};

/// Precision used for derivatives of constants; large enough to never be
/// the binding bound in any product.
inline constexpr long kExactZeroPrec = 1L << 24;

}  // namespace padic_tate
