#pragma once

#include <utility>

#include "padic_tate/dual.hpp"
#include "padic_tate/element.hpp"

namespace padic_tate {

/// E_q: y^2 + xy = x^3 + a4 x + a6 for v(q) > 0.
struct TateCurve {
  Element q;
  Element a4;
  Element a6;
  long prec = 0;   // working absolute precision (pi-digits)
  long slack = 10; // tolerated precision loss (pi-digits)
};

struct TatePoint {
  enum class Kind { affine, identity };
  Kind kind = Kind::identity;
  Element x;
  Element y;

  static TatePoint identity() { return {}; }
  static TatePoint affine(Element x, Element y) { return {Kind::affine, std::move(x), std::move(y)}; }
  bool is_identity() const { return kind == Kind::identity; }
  /// min absolute precision of the coordinates (unbounded for the identity).
  long prec() const;
};

/// sum_{n>=1} n^k q^n / (1 - q^n), known to the precision of q.
Element s_k(const Element& q, long k);

/// a4 = -5 s_3(q); a6 = -sum (5n^3 + 7n^5)/12 q^n/(1-q^n) with integral
/// termwise coefficients. Precision is that of q.
TateCurve curve_coefficients(const Element& q, long slack = 10);

/// u q^(-n) with n = floor(v(u)/v(q)), so 0 <= v(u_red) < v(q).
std::pair<Element, long> reduce_to_fundamental(const Element& q, const Element& u);

/// (X(u), Y(u)) for u in the fundamental domain, via the principal parts
/// u/(1-u)^2, u^2/(1-u)^3 plus the one-sided q-expansions.
std::pair<Element, Element> tate_series_point(const TateCurve& curve, const Element& u);
/// Same over dual numbers in u (for X' and Y').
std::pair<DualElement, DualElement> tate_series_point(const TateCurve& curve, const DualElement& u);

/// phi_q(u): reduce, then evaluate; identity when u_red = 1 to precision.
TatePoint phi(const TateCurve& curve, const Element& u);

TatePoint curve_neg(const TateCurve& curve, const TatePoint& P);
TatePoint curve_add(const TateCurve& curve, const TatePoint& P, const TatePoint& Q);

/// y^2 + xy - x^3 - a4 x - a6 at an affine point.
Element curve_residual(const TateCurve& curve, const TatePoint& P);
bool on_curve(const TateCurve& curve, const TatePoint& P);

struct CurveInvariants {
  Element b2, b4, b6, b8, c4, delta, j;
};
CurveInvariants curve_invariants(const TateCurve& curve);
Element j_invariant(const TateCurve& curve);

/// Valuation of (uX')^2 - 4X^3 - X^2 - 4 a4 X - 4 a6, X' by dual numbers.
ValuationResult verify_ode(const TateCurve& curve, const Element& u);
/// Valuation of uX' - X - 2Y.
ValuationResult verify_derivative_relation(const TateCurve& curve, const Element& u);

/// Outcome of certifying phi(u1 u2) = phi(u1) + phi(u2).
struct HomomorphismCheck {
  bool ok = false;
  /// A known nonzero coordinate digit below the target: the two sides differ.
  bool disagrees = false;
  bool both_identity = false;
  /// Certified agreement of the coordinates in pi-digits (when not both
  /// identity); -1 when only one side is the identity.
  long residual_digits = -1;
  long working_prec = 0;
};

/// Reads q, u1 and u2 as exact values and evaluates both sides at working
/// precision prec. While the shortfall below target is only lost precision
/// (an imprecise zero or an identity decided at the wrong precision), the
/// working precision grows by slack, up to 2 prec.
HomomorphismCheck verify_homomorphism(const Element& q, const Element& u1, const Element& u2, long prec,
                                      long target, long slack);

}  // namespace padic_tate
