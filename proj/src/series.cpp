#include "padic_tate/series.hpp"

#include <algorithm>
#include <string>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

long ram_index(const FieldDescriptor& F) { return F.ramified_layout() ? F.e() : 1; }

long vp_long(long n, long p) {
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Smallest n0 >= 1 such that n*shift - e*(n-1)/(p-1) >= target for all
// n >= n0. Both v_p(n!) and v_p(n) are at most (n-1)/(p-1), so past n0 every
// term is invisible modulo pi^target.
long linear_bound_start(long p, long e, long shift, long target) {
  const long slope = shift * (p - 1) - e;  // > 0 on the domain
  const long need = target * (p - 1) - e;
  if (need <= 0) return 1;
  return std::max(1L, (need + slope - 1) / slope);
}

template <class ValuationOfTerm>
long truncation_index(long p, long e, long shift, long target, ValuationOfTerm term_val) {
  const long n0 = linear_bound_start(p, e, shift, target);
  long last = 0;
  for (long n = 1; n < n0; ++n) {
    if (term_val(n) < target) last = n;
  }
  return last;
}

const Element& value_of(const Element& x) { return x; }
const Element& value_of(const DualElement& x) { return x.value(); }

Element one_like(const Element& x, long prec) { return Element::one(x.field(), prec); }
DualElement one_like(const DualElement& x, long prec) {
  return DualElement::constant(Element::one(x.field(), prec));
}

Element zero_like(const Element& x, long prec) { return Element::zero(x.field(), prec); }
DualElement zero_like(const DualElement& x, long prec) {
  return DualElement::constant(Element::zero(x.field(), prec));
}

long result_prec(const Element& x) { return x.abs_prec(); }
long result_prec(const DualElement& x) { return x.value().abs_prec(); }

bool reaches(const Element& r, long target) { return r.abs_prec() >= target; }
bool reaches(const DualElement& r, long target) { return r.value().abs_prec() >= target; }

// Checks v(x) > 1/(p-1) and returns the valuation in pi-units, or -1 when x
// is an imprecise zero whose lower bound already lies inside the domain.
long domain_shift(const Element& x, const char* what) {
  const auto& F = *x.field();
  const long e = ram_index(F);
  const long p = F.p();
  const long s = x.is_zero() ? x.abs_prec() : x.shift();
  if (s * (p - 1) <= e) {
    const std::string bound = x.is_zero() ? "only known to satisfy v >= " : "v = ";
    throw Error(ErrorKind::OutsideConvergenceDomain,
                std::string(what) + ": " + bound + x.valuation().value.to_string() +
                    " is not above 1/(p-1)");
  }
  return x.is_zero() ? -1 : s;
}

template <class T>
T exp_impl(const T& x, long extra_terms) {
  const Element& xv = value_of(x);
  const auto& F = *xv.field();
  const long target = result_prec(x);
  const long s = domain_shift(xv, "exp");
  if (s < 0) {
    // exp(O(pi^N)) = 1 + O(pi^N); the derivative exp(x) is likewise 1 + O(pi^N).
    T r = one_like(x, target);
    if constexpr (std::is_same_v<T, DualElement>) r = T(r.value(), Element::one(xv.field(), target) * x.deriv());
    return r;
  }
  const long p = F.p();
  const long e = ram_index(F);
  const long T_idx = exp_truncation_index(p, e, s, target) + extra_terms;
  T sum = one_like(x, target);
  T term = one_like(x, target);
  for (long n = 1; n <= T_idx; ++n) {
    term = (term * x).div_int(n);
    sum = sum + term;
  }
  T r = sum.with_prec(target);
  if (!reaches(r, target)) {
    throw Error(ErrorKind::InsufficientPrecision, "exp lost precision below pi^" + std::to_string(target));
  }
  return r;
}

template <class T>
T log_impl(const T& y, long extra_terms) {
  const Element& yv = value_of(y);
  const long target = result_prec(y);
  const T z = y - one_like(y, target);
  const Element& zv = value_of(z);
  const auto& F = *yv.field();
  const long s = domain_shift(zv, "log");
  if (s < 0) {
    T r = zero_like(y, target);
    if constexpr (std::is_same_v<T, DualElement>) r = T(r.value(), y.deriv().with_prec(target));
    return r;
  }
  const long p = F.p();
  const long e = ram_index(F);
  const long T_idx = log_truncation_index(p, e, s, target) + extra_terms;
  T sum = zero_like(y, target);
  T zpow = one_like(y, target);
  for (long n = 1; n <= T_idx; ++n) {
    zpow = zpow * z;
    const T term = zpow.div_int(n);
    sum = (n % 2 == 1) ? sum + term : sum - term;
  }
  T r = sum.with_prec(target);
  if (!reaches(r, target)) {
    throw Error(ErrorKind::InsufficientPrecision, "log lost precision below pi^" + std::to_string(target));
  }
  return r;
}

}  // namespace

long factorial_valuation_int(long n, long p) {
  long v = 0;
  for (long q = n / p; q > 0; q /= p) v += q;
  return v;
}

Rational factorial_valuation(long n, long p) { return Rational(factorial_valuation_int(n, p)); }

long exp_truncation_index(long p, long e, long shift, long target) {
  return truncation_index(p, e, shift, target,
                          [&](long n) { return n * shift - e * factorial_valuation_int(n, p); });
}

long log_truncation_index(long p, long e, long shift, long target) {
  return truncation_index(p, e, shift, target, [&](long n) { return n * shift - e * vp_long(n, p); });
}

Element p_exp(const Element& x) { return exp_impl(x, 0); }
Element p_log(const Element& y) { return log_impl(y, 0); }

// The derivative series is the value series shifted by one index, so one
// extra term keeps it complete to the same target.
DualElement p_exp(const DualElement& x) { return exp_impl(x, 1); }
DualElement p_log(const DualElement& y) { return log_impl(y, 1); }

DualElement dual_eval(const DualFormula& f, const Element& x) { return f(DualElement::variable(x)); }

namespace formulas {
DualElement exp(const DualElement& x) { return p_exp(x); }
DualElement identity(const DualElement& x) { return x; }
DualElement square(const DualElement& x) { return x * x; }
}  // namespace formulas

}  // namespace padic_tate
