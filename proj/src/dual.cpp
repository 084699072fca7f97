#include "padic_tate/dual.hpp"

#include <algorithm>

namespace padic_tate {

DualElement::DualElement(Element value, Element deriv) : value_(std::move(value)), deriv_(std::move(deriv)) {
  require_same_field(value_, deriv_);
}

DualElement DualElement::variable(const Element& x) {
  return {x, Element::one(x.field(), std::max(x.abs_prec(), x.rel_prec()))};
}

DualElement DualElement::constant(const Element& c) {
  return {c, Element::zero(c.field(), kExactZeroPrec)};
}

DualElement DualElement::operator-() const { return {-value_, -deriv_}; }

DualElement operator+(const DualElement& a, const DualElement& b) {
  return {a.value_ + b.value_, a.deriv_ + b.deriv_};
}

DualElement operator-(const DualElement& a, const DualElement& b) {
  return {a.value_ - b.value_, a.deriv_ - b.deriv_};
}

DualElement operator*(const DualElement& a, const DualElement& b) {
  return {a.value_ * b.value_, a.deriv_ * b.value_ + a.value_ * b.deriv_};
}

DualElement operator*(const DualElement& a, const Element& c) { return {a.value_ * c, a.deriv_ * c}; }

DualElement operator/(const DualElement& a, const DualElement& b) { return a * b.inverse(); }

DualElement DualElement::inverse() const {
  const Element inv = value_.inverse();
  return {inv, -(deriv_ * inv * inv)};
}

DualElement DualElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return constant(Element::one(field(), value_.is_zero() ? value_.abs_prec() : value_.rel_prec()));
  DualElement result = *this;
  DualElement base = *this;
  bool started = false;
  while (k > 0) {
    if (k & 1) {
      result = started ? result * base : base;
      started = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

DualElement DualElement::mul_int(const mpz_class& n) const { return {value_.mul_int(n), deriv_.mul_int(n)}; }

DualElement DualElement::div_int(const mpz_class& n) const { return {value_.div_int(n), deriv_.div_int(n)}; }

DualElement DualElement::with_prec(long prec) const { return {value_.with_prec(prec), deriv_.with_prec(prec)}; }

std::string DualElement::to_string() const {
  return "(" + value_.to_string() + ") + (" + deriv_.to_string() + ")*eps";
}

}  // namespace padic_tate
