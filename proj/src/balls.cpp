#include "padic_tate/balls.hpp"

#include <algorithm>
#include <optional>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

long ram_index(const Element& x) { return x.field()->ramified_layout() ? x.field()->e() : 1; }

// Decides v(d) > r from the known digits of d.
bool valuation_exceeds(const Element& d, const Rational& r, const char* what) {
  const ValuationResult v = d.valuation();
  if (v.is_exact()) return v.value > r;
  if (v.value > r) return true;
  throw Error(ErrorKind::ImpreciseDistance, std::string(what) + ": only v >= " + v.value.to_string() +
                                                " is known, not enough to compare with " + r.to_string());
}

void check_lambda(const Element& x, const Rational& lambda) {
  if (lambda < Rational(0)) throw Error(ErrorKind::InvalidArgument, "lambda must be non-negative");
  if (!(lambda * Rational(ram_index(x))).is_integer()) {
    throw Error(ErrorKind::InvalidArgument,
                "lambda " + lambda.to_string() + " is not in the value group (1/e)Z of this field");
  }
}

// max_c v(x - c); x must be distinguishable from every c.
Rational distance_to_set(const std::vector<Element>& C, const Element& x) {
  if (C.empty()) throw Error(ErrorKind::InvalidArgument, "the finite set C must be nonempty");
  std::optional<Rational> best;
  for (const Element& c : C) {
    const Element d = x - c;
    if (d.is_zero()) {
      throw Error(ErrorKind::MemberOfC, x.to_string() + " equals an element of C to the working precision");
    }
    const Rational v = d.valuation().value;
    best = best ? std::max(*best, v) : v;
  }
  return *best;
}

}  // namespace

bool Ball::contains(const Element& x) const { return valuation_exceeds(x - center, radius, "ball membership"); }

bool operator==(const Ball& a, const Ball& b) { return a.radius == b.radius && a.contains(b.center); }

std::string Ball::canonical_key() const {
  // digits of the center at pi-powers <= floor(radius * e) determine the ball
  const long e = ram_index(center);
  const long depth = (radius * Rational(e)).floor() + 1;
  Element c = center.with_prec(depth);
  if (c.abs_prec() < depth) {
    throw Error(ErrorKind::ImpreciseDistance, "center is not known to the ball's radius");
  }
  return radius.to_string() + "|" + c.to_string();
}

std::string Ball::to_string() const { return "B_{>" + radius.to_string() + "}(" + center.to_string() + ")"; }

Rational integer_lambda(long m, long p) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "v(0) is infinite");
  long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return Rational(v);
}

Ball ball_next(const std::vector<Element>& C, const Rational& lambda, const Element& x) {
  check_lambda(x, lambda);
  const Rational r = distance_to_set(C, x) + lambda;
  if (Rational(x.abs_prec(), ram_index(x)) <= r) {
    throw Error(ErrorKind::ImpreciseDistance, "x is known only to v >= " + Rational(x.abs_prec(), ram_index(x)).to_string() +
                                                  ", not enough to pin down a ball of radius " + r.to_string());
  }
  return {x, r};
}

bool same_ball(const std::vector<Element>& C, const Rational& lambda, const Element& x, const Element& y) {
  check_lambda(x, lambda);
  const Rational r = distance_to_set(C, x) + lambda;
  distance_to_set(C, y);
  return valuation_exceeds(x - y, r, "same_ball");
}

}  // namespace padic_tate
