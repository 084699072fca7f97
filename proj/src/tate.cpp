#include "padic_tate/tate.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

void require_positive_valuation(const Element& q) {
  if (q.is_zero()) {
    throw Error(ErrorKind::ImpreciseValuation, "q has no known nonzero digit, its valuation is not exact");
  }
  if (q.shift() <= 0) {
    throw Error(ErrorKind::NonpositiveValuation, "v(q) = " + q.valuation().value.to_string() + " is not positive");
  }
}

// sum_{n : n*v(q) < target} c(n) q^n / (1 - q^n)
template <class Coefficient>
Element lambert_sum(const Element& q, Coefficient coeff) {
  const long N = q.abs_prec();
  if (q.is_zero()) {
    if (q.abs_prec() <= 0) throw Error(ErrorKind::NonpositiveValuation, "q is not known to have positive valuation");
    return Element::zero(q.field(), N);
  }
  if (q.shift() <= 0) {
    throw Error(ErrorKind::NonpositiveValuation, "v(q) = " + q.valuation().value.to_string() + " is not positive");
  }
  const Element one = Element::one(q.field(), N);
  Element sum = Element::zero(q.field(), N);
  Element qn = one;
  for (long n = 1; n * q.shift() < N; ++n) {
    qn = qn * q;
    sum = sum + qn.mul_int(coeff(n)) / (one - qn);
  }
  return sum.with_prec(N);
}

mpz_class int_pow(long n, unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), k);
  return r;
}

const Element& value_of(const Element& x) { return x; }
const Element& value_of(const DualElement& x) { return x.value(); }

Element lift_constant(const Element& u, const mpz_class& c, long prec) { return Element::from_integer(u.field(), c, prec); }
DualElement lift_constant(const DualElement& u, const mpz_class& c, long prec) {
  return DualElement::constant(Element::from_integer(u.field(), c, prec));
}

template <class T>
std::pair<T, T> series_point(const TateCurve& C, const T& u, long extra_target) {
  const Element& uv = value_of(u);
  const Element& q = C.q;
  require_same_field(uv, q);
  if (uv.is_zero()) throw Error(ErrorKind::ImpreciseValuation, "u has no known nonzero digit");
  const long sq = q.shift();
  const long su = uv.shift();
  if (su < 0 || su >= sq) {
    throw Error(ErrorKind::InvalidArgument, "u is not in the fundamental domain 0 <= v(u) < v(q)");
  }
  const long N = C.prec;
  const T one = lift_constant(u, 1, N);
  const T w = one - u;
  const Element& wv = value_of(w);
  if (wv.is_zero()) throw Error(ErrorKind::OnKernel, "u = 1 to the working precision, a point of the kernel q^Z");
  const long k = wv.shift();
  if (2 * k > N - C.slack) {
    throw Error(ErrorKind::InsufficientPrecision,
                "v(1 - u) = " + wv.valuation().value.to_string() +
                    ": the principal part's pole exhausts the precision budget");
  }
  const T w2 = w * w;
  T X = u / w2;
  T Y = u * u / (w2 * w);

  const long target = N + extra_target;
  long dmax = 0;
  while ((dmax + 1) * (sq - su) < target) ++dmax;
  if (dmax == 0) return {X.with_prec(N), Y.with_prec(N)};

  std::vector<T> up{one, u};
  std::vector<T> un{one, u.inverse()};
  for (long m = 2; m <= dmax; ++m) {
    up.push_back(up.back() * u);
    un.push_back(un.back() * un[1]);
  }
  Element qd = Element::one(q.field(), N);
  for (long d = 1; d <= dmax; ++d) {
    qd = qd * q;
    T cx = lift_constant(u, 0, N);
    T cy = lift_constant(u, 0, N);
    for (long m = 1; m <= d; ++m) {
      if (d % m != 0) continue;
      const auto mu = static_cast<std::size_t>(m);
      cx = cx + (up[mu] + un[mu]).mul_int(m) - lift_constant(u, 2 * m, N);
      cy = cy + up[mu].mul_int((m - 1) * m / 2) - un[mu].mul_int(m * (m + 1) / 2) + lift_constant(u, m, N);
    }
    X = X + cx * qd;
    Y = Y + cy * qd;
  }
  return {X.with_prec(N), Y.with_prec(N)};
}

}  // namespace

long TatePoint::prec() const {
  if (is_identity()) return std::numeric_limits<long>::max();
  return std::min(x.abs_prec(), y.abs_prec());
}

Element s_k(const Element& q, long k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "s_k needs k >= 1");
  return lambert_sum(q, [k](long n) { return int_pow(n, static_cast<unsigned long>(k)); });
}

TateCurve curve_coefficients(const Element& q, long slack) {
  require_positive_valuation(q);
  TateCurve C;
  C.q = q;
  C.prec = q.abs_prec();
  C.slack = slack;
  C.a4 = -(s_k(q, 3).mul_int(5));
  C.a6 = -lambert_sum(q, [](long n) {
    mpz_class c = 5 * int_pow(n, 3) + 7 * int_pow(n, 5);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), 12);
    return c;
  });
  return C;
}

std::pair<Element, long> reduce_to_fundamental(const Element& q, const Element& u) {
  require_positive_valuation(q);
  if (u.is_zero()) throw Error(ErrorKind::ImpreciseValuation, "u has no known nonzero digit");
  const long su = u.shift();
  const long sq = q.shift();
  const long n = su >= 0 ? su / sq : -((-su + sq - 1) / sq);
  if (n == 0) return {u, 0};
  return {u * q.pow(-n), n};
}

std::pair<Element, Element> tate_series_point(const TateCurve& curve, const Element& u) {
  return series_point(curve, u, 0);
}

std::pair<DualElement, DualElement> tate_series_point(const TateCurve& curve, const DualElement& u) {
  // d/du of q^d u^(-m) has valuation >= d(v(q) - v(u)) - v(u).
  return series_point(curve, u, u.value().is_zero() ? 0 : u.value().shift());
}

TatePoint phi(const TateCurve& curve, const Element& u) {
  const auto [ur, n] = reduce_to_fundamental(curve.q, u);
  if ((ur - Element::one(ur.field(), ur.abs_prec())).is_zero()) return TatePoint::identity();
  auto [X, Y] = tate_series_point(curve, ur);
  return TatePoint::affine(std::move(X), std::move(Y));
}

Element curve_residual(const TateCurve& C, const TatePoint& P) {
  const Element& x = P.x;
  const Element& y = P.y;
  return y * y + x * y - x * x * x - C.a4 * x - C.a6;
}

bool on_curve(const TateCurve& C, const TatePoint& P) {
  return P.is_identity() || curve_residual(C, P).is_zero();
}

TatePoint curve_neg(const TateCurve& C, const TatePoint& P) {
  (void)C;
  if (P.is_identity()) return P;
  return TatePoint::affine(P.x, -P.y - P.x);
}

TatePoint curve_add(const TateCurve& C, const TatePoint& P, const TatePoint& Q) {
  for (const TatePoint* R : {&P, &Q}) {
    if (!on_curve(C, *R)) {
      throw Error(ErrorKind::OffCurveInput,
                  "point (" + R->x.to_string() + ", " + R->y.to_string() + ") is not on the curve");
    }
  }
  if (P.is_identity()) return Q;
  if (Q.is_identity()) return P;
  const Element& x1 = P.x;
  const Element& y1 = P.y;
  const Element& x2 = Q.x;
  const Element& y2 = Q.y;
  Element lambda;
  const Element dx = x2 - x1;
  if (!dx.is_zero()) {
    lambda = (y2 - y1) / dx;
  } else {
    const bool same = (y2 - y1).is_zero();
    const bool opposite = (y2 + y1 + x1).is_zero();
    if (opposite) return TatePoint::identity();
    if (!same) {
      throw Error(ErrorKind::PrecisionCollapse,
                  "x-coordinates agree to precision but the points are neither equal nor opposite");
    }
    const Element den = y1.mul_int(2) + x1;
    const Element num = x1 * x1 * Element::from_integer(x1.field(), 3, x1.abs_prec()) + C.a4 - y1;
    if (den.is_zero()) {
      throw Error(ErrorKind::PrecisionCollapse, "tangent slope denominator indistinguishable from zero");
    }
    lambda = num / den;
  }
  const Element x3 = lambda * lambda + lambda - x1 - x2;
  const Element y3 = lambda * (x1 - x3) - y1 - x3;
  return TatePoint::affine(x3, y3);
}

CurveInvariants curve_invariants(const TateCurve& C) {
  const long N = C.prec;
  const auto& F = C.q.field();
  CurveInvariants I;
  I.b2 = Element::one(F, N);
  I.b4 = C.a4.mul_int(2);
  I.b6 = C.a6.mul_int(4);
  I.b8 = C.a6 - C.a4 * C.a4;
  I.c4 = Element::one(F, N) - C.a4.mul_int(48);
  I.delta = -(I.b2 * I.b2 * I.b8) - (I.b4 * I.b4 * I.b4).mul_int(8) - (I.b6 * I.b6).mul_int(27) +
            (I.b2 * I.b4 * I.b6).mul_int(9);
  if (I.delta.is_zero()) {
    throw Error(ErrorKind::PrecisionCollapse, "discriminant indistinguishable from zero at this precision");
  }
  I.j = I.c4 * I.c4 * I.c4 / I.delta;
  return I;
}

Element j_invariant(const TateCurve& curve) { return curve_invariants(curve).j; }

ValuationResult verify_ode(const TateCurve& C, const Element& u) {
  const auto [X, Y] = tate_series_point(C, DualElement::variable(u));
  (void)Y;
  const Element& x = X.value();
  const Element uxp = u * X.deriv();
  const Element residual = uxp * uxp - (x * x * x).mul_int(4) - x * x - (C.a4 * x).mul_int(4) - C.a6.mul_int(4);
  return residual.valuation();
}

ValuationResult verify_derivative_relation(const TateCurve& C, const Element& u) {
  const auto [X, Y] = tate_series_point(C, DualElement::variable(u));
  return (u * X.deriv() - X.value() - Y.value().mul_int(2)).valuation();
}

HomomorphismCheck verify_homomorphism(const Element& q, const Element& u1, const Element& u2, long prec,
                                      long target, long slack) {
  HomomorphismCheck out;
  const long step = std::max(1L, slack);
  for (long W = prec;; W = std::min(W + step, 2 * prec)) {
    out.working_prec = W;
    const TateCurve C = curve_coefficients(q.lift(W), slack);
    const Element a = u1.lift(W);
    const Element b = u2.lift(W);
    const TatePoint lhs = phi(C, a * b);
    const TatePoint rhs = curve_add(C, phi(C, a), phi(C, b));
    out.both_identity = lhs.is_identity() && rhs.is_identity();
    if (out.both_identity) {
      out.ok = true;
      return out;
    }
    if (lhs.is_identity() == rhs.is_identity()) {
      const Element dx = lhs.x - rhs.x;
      const Element dy = lhs.y - rhs.y;
      auto digits = [](const Element& d) { return d.is_zero() ? d.abs_prec() : d.shift(); };
      out.residual_digits = std::min(digits(dx), digits(dy));
      out.disagrees = (!dx.is_zero() && dx.shift() < target) || (!dy.is_zero() && dy.shift() < target);
      out.ok = out.residual_digits >= target;
    } else {
      out.residual_digits = -1;
    }
    if (out.ok || out.disagrees || W >= 2 * prec) return out;
  }
}

}  // namespace padic_tate
