#pragma once

#include <functional>

#include "padic_tate/dual.hpp"
#include "padic_tate/element.hpp"
#include "padic_tate/rational.hpp"

namespace padic_tate {

/// v_p(n!) = (n - s_p(n)) / (p - 1), s_p the base-p digit sum.
Rational factorial_valuation(long n, long p);
long factorial_valuation_int(long n, long p);

/// Largest n whose term x^n/n! (resp. y^n/n for log) can still be nonzero
/// modulo pi^target, for an argument of pi-adic valuation `shift` in a field
/// with ramification index e. Returns 0 if no term beyond the constant
/// matters.
long exp_truncation_index(long p, long e, long shift, long target);
long log_truncation_index(long p, long e, long shift, long target);

/// exp(x) = sum x^n/n! on v(x) > 1/(p-1). The result is known to the
/// precision of x. An imprecise zero whose bound lies inside the domain
/// gives 1 + O(pi^N).
Element p_exp(const Element& x);
/// log(y) = sum (-1)^(n+1) (y-1)^n/n on v(y-1) > 1/(p-1).
Element p_log(const Element& y);

DualElement p_exp(const DualElement& x);
DualElement p_log(const DualElement& y);

using DualFormula = std::function<DualElement(const DualElement&)>;

/// Runs f over dual numbers seeded with (x, 1).
DualElement dual_eval(const DualFormula& f, const Element& x);

namespace formulas {
DualElement exp(const DualElement& x);
DualElement identity(const DualElement& x);
DualElement square(const DualElement& x);
}  // namespace formulas

}  // namespace padic_tate
