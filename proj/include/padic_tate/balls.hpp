#pragma once

#include <string>
#include <vector>

#include "padic_tate/element.hpp"
#include "padic_tate/rational.hpp"

namespace padic_tate {

/// Open ball B_{>radius}(center) = {x : v(x - center) > radius}.
struct Ball {
  Element center;
  Rational radius;

  /// v(x - center) > radius; ImpreciseDistance when the known digits of
  /// x - center do not decide it.
  bool contains(const Element& x) const;
  /// Extensional equality: same radius and each center inside the other ball.
  friend bool operator==(const Ball& a, const Ball& b);
  /// Same string for equal balls: radius plus the center's digits below the radius.
  std::string canonical_key() const;
  std::string to_string() const;
};

/// v(m) for an integer m: "m-next" is v(m)-next.
Rational integer_lambda(long m, long p);

/// The ball lambda-next to C containing x: B_{>max_c v(x-c) + lambda}(x).
Ball ball_next(const std::vector<Element>& C, const Rational& lambda, const Element& x);

/// v(x - y) > lambda + v(x - c) for every c in C.
bool same_ball(const std::vector<Element>& C, const Rational& lambda, const Element& x, const Element& y);

}  // namespace padic_tate
