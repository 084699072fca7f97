#include <doctest.h>

#include "oracles/exact.hpp"
#include "oracles/modular.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/parse.hpp"
#include "padic_tate/random.hpp"
#include "padic_tate/tate.hpp"
#include "unit/helpers.hpp"

using namespace padic_tate;
using testing_support::kind_of;
using testing_support::proves_at_least;
using testing_support::Z;

namespace {

bool points_agree(const TatePoint& a, const TatePoint& b) {
  if (a.is_identity() || b.is_identity()) return a.is_identity() && b.is_identity();
  return agree(a.x, b.x) && agree(a.y, b.y);
}

long min_prec(const TatePoint& P) { return P.is_identity() ? 1L << 30 : P.prec(); }

}  // namespace

TEST_CASE("s_k examples") {
  auto Q5 = make_base_field(5);
  CHECK(s_k(Element::zero(Q5, 8), 1).is_zero());
  CHECK(s_k(Element::zero(Q5, 8), 1).abs_prec() == 8);
  CHECK(s_k(Z(Q5, 390625, 8), 1).is_zero());  // 5^8
  const Element s1 = s_k(Z(Q5, 5, 8), 1);
  CHECK(s1.abs_prec() == 8);
  CHECK(oracle::matches(s1, oracle::lambert(5, 1, 8)));
  for (long v : {1L, 2L, 3L}) {
    const Element q = Element::uniformizer_power(Q5, v, 30);
    // s_3(q) = q + O(q^2)
    CHECK(proves_at_least(s_k(q, 3) - q, 2 * v));
    CHECK((s_k(q, 3) - q).valuation().value == Rational(2 * v));
  }
  CHECK(kind_of([&] { s_k(Z(Q5, 2, 8), 1); }) == ErrorKind::NonpositiveValuation);
}

TEST_CASE("curve coefficients") {
  for (long n = 1; n <= 1000; ++n) {
    mpz_class c = 5 * oracle::pk(n, 3) + 7 * oracle::pk(n, 5);
    CHECK(mpz_divisible_ui_p(c.get_mpz_t(), 12));
  }
  auto Q5 = make_base_field(5);
  const TateCurve C = curve_coefficients(Z(Q5, 5, 8));
  CHECK(oracle::matches(C.a4, -5 * oracle::lambert(5, 3, 8)));
  // a6 = -(5 s_3 + 7 s_5)/12 evaluated as rationals
  CHECK(oracle::matches(C.a6, -(5 * oracle::lambert(5, 3, 8) + 7 * oracle::lambert(5, 5, 8)) / 12));
  for (const auto& [p, q] : std::vector<std::pair<long, long>>{{2, 4}, {3, 9}, {5, 5}, {7, 7}}) {
    auto F = make_base_field(p);
    const TateCurve E = curve_coefficients(Z(F, q, 40));
    const Rational vq = E.q.valuation().value;
    CHECK(E.a4.valuation().value >= vq);
    CHECK(E.a6.valuation().value >= vq);
    CHECK(E.a4.abs_prec() >= 40);
    CHECK(E.a6.abs_prec() >= 40);
    // p = 2, 3: the /12 never costs precision
    CHECK(oracle::matches(E.a6, -(5 * oracle::lambert(q, 3, 45) + 7 * oracle::lambert(q, 5, 45)) / 12));
  }
  CHECK(kind_of([&] { curve_coefficients(Z(Q5, 3, 8)); }) == ErrorKind::NonpositiveValuation);
  CHECK(kind_of([&] { curve_coefficients(Element::zero(Q5, 8)); }) == ErrorKind::ImpreciseValuation);
}

TEST_CASE("reduce_to_fundamental examples") {
  auto Q5 = make_base_field(5);
  const Element q = Z(Q5, 25, 40);
  const Element u = Z(Q5, 7, 40);
  CHECK(reduce_to_fundamental(q, u).first == u);
  CHECK(reduce_to_fundamental(q, u).second == 0);
  const auto [one, n3] = reduce_to_fundamental(q, q.pow(3));
  CHECK(n3 == 3);
  CHECK(agree(one, Element::one(Q5, 40)));
  const auto [five, n] = reduce_to_fundamental(q, Z(Q5, 78125, 40));
  CHECK(n == 3);
  CHECK(agree(five, Z(Q5, 5, 40)));
  CHECK(five.abs_prec() == 34);
  const auto [neg, nn] = reduce_to_fundamental(q, Element::uniformizer_power(Q5, -3, 40));
  CHECK(nn == -2);
  CHECK(neg.shift() == 1);
  CHECK(kind_of([&] { reduce_to_fundamental(q, Element::zero(Q5, 40)); }) == ErrorKind::ImpreciseValuation);
}

TEST_CASE("X and Y against the bilateral sums") {
  auto Q5 = make_base_field(5);
  const TateCurve C = curve_coefficients(Z(Q5, 25, 40));
  const auto [X, Y] = tate_series_point(C, Z(Q5, 5, 40));
  CHECK(X.abs_prec() >= 39);
  CHECK(Y.abs_prec() >= 39);
  CHECK(oracle::matches(X, oracle::tate_X(25, 5, 30)));
  CHECK(oracle::matches(Y, oracle::tate_Y(25, 5, 30)));
  // a unit u, and a field with p = 3
  const auto [X2, Y2] = tate_series_point(C, Z(Q5, 7, 40));
  CHECK(oracle::matches(X2, oracle::tate_X(25, 7, 30)));
  CHECK(oracle::matches(Y2, oracle::tate_Y(25, 7, 30)));
  auto Q3 = make_base_field(3);
  const TateCurve C3 = curve_coefficients(Z(Q3, 9, 40));
  const auto [X3, Y3] = tate_series_point(C3, Z(Q3, 6, 40));
  CHECK(oracle::matches(X3, oracle::tate_X(9, 6, 30)));
  CHECK(oracle::matches(Y3, oracle::tate_Y(9, 6, 30)));
  CHECK(on_curve(C3, TatePoint::affine(X3, Y3)));
}

TEST_CASE("tate_series_point error cases") {
  auto Q5 = make_base_field(5);
  const TateCurve C = curve_coefficients(Z(Q5, 25, 40));
  CHECK(kind_of([&] { tate_series_point(C, Element::one(Q5, 40)); }) == ErrorKind::OnKernel);
  // v(1 - u) = 16: pole of order 32 > 40 - 10
  CHECK(kind_of([&] { tate_series_point(C, parse_element("1 + 5^16", Q5, 40)); }) ==
        ErrorKind::InsufficientPrecision);
  CHECK_NOTHROW(tate_series_point(C, parse_element("1 + 5^15", Q5, 40)));
  CHECK(kind_of([&] { tate_series_point(C, Z(Q5, 25, 40)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("differential identities and curve equation at seeded points") {
  for (const auto& [p, qv] : std::vector<std::pair<long, long>>{{5, 25}, {3, 9}, {5, 5}, {2, 4}, {7, 49}}) {
    auto F = make_base_field(p);
    const long N = 40;
    const TateCurve C = curve_coefficients(Z(F, qv, N));
    CAPTURE(p);
    CAPTURE(qv);
    for (std::uint64_t t = 0; t < 20; ++t) {
      Rng rng(0, "tate-ode", t);
      const Element u = random_fundamental_point(C.q, N, rng);
      const auto [X, Y] = tate_series_point(C, u);
      CHECK(on_curve(C, TatePoint::affine(X, Y)));
      CHECK(curve_residual(C, TatePoint::affine(X, Y)).abs_prec() >= N - C.slack);
      const auto rel = verify_derivative_relation(C, u);
      CHECK(rel.value >= Rational(N - C.slack));
      const auto ode = verify_ode(C, u);
      CHECK(ode.value >= Rational(N - C.slack));
      // u and u^2 checked independently
      const Element u2 = reduce_to_fundamental(C.q, u * u).first;
      if (!(u2 - Element::one(F, u2.abs_prec())).is_zero() &&
          (u2.shift() > 0 || (u2 - Element::one(F, N)).shift() == 0)) {
        CHECK(verify_ode(C, u2).value >= Rational(N - C.slack));
      }
    }
  }
}

TEST_CASE("ode residual is a genuine check") {
  // perturbing a6 must break the identity at a visible valuation
  auto Q5 = make_base_field(5);
  TateCurve C = curve_coefficients(Z(Q5, 25, 40));
  C.a6 = C.a6 + Z(Q5, 5, 40).pow(20);
  CHECK(verify_ode(C, Z(Q5, 7, 40)).value == Rational(20));
}

TEST_CASE("phi: kernel, homomorphism, group law") {
  auto Q5 = make_base_field(5);
  const long N = 40;
  const TateCurve C = curve_coefficients(Z(Q5, 25, N));
  for (long n = -2; n <= 2; ++n) CHECK(phi(C, C.q.pow(n)).is_identity());

  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng(1, "tate-hom", t);
    const Element u1 = random_fundamental_point(C.q, N, rng);
    const Element u2 = random_fundamental_point(C.q, N, rng);
    const TatePoint P = phi(C, u1);
    const TatePoint Q = phi(C, u2);
    const TatePoint PQ = phi(C, u1 * u2);
    const TatePoint S = curve_add(C, P, Q);
    REQUIRE_FALSE(PQ.is_identity());
    REQUIRE_FALSE(S.is_identity());
    CHECK(proves_at_least(PQ.x - S.x, N - C.slack));
    CHECK(proves_at_least(PQ.y - S.y, N - C.slack));
    CHECK(on_curve(C, P));
    CHECK(P.prec() >= N - C.slack);
    // periodicity: u and u q^k give the same point
    CHECK(points_agree(phi(C, u1 * C.q.pow(2)), P));
    // identity and inverse laws
    CHECK(points_agree(curve_add(C, P, TatePoint::identity()), P));
    CHECK(curve_add(C, P, curve_neg(C, P)).is_identity());
    // phi(1/u) = -phi(u)
    CHECK(points_agree(phi(C, u1.inverse()), curve_neg(C, P)));
    // doubling branch
    const TatePoint D = curve_add(C, P, P);
    const TatePoint P2 = phi(C, u1 * u1);
    if (!P2.is_identity()) {
      CHECK(proves_at_least(D.x - P2.x, N - C.slack));
      CHECK(proves_at_least(D.y - P2.y, N - C.slack));
    }
    // associativity
    const TatePoint R = phi(C, random_fundamental_point(C.q, N, rng));
    const TatePoint left = curve_add(C, curve_add(C, P, Q), R);
    const TatePoint right = curve_add(C, P, curve_add(C, Q, R));
    CHECK(points_agree(left, right));
    CHECK(std::min(min_prec(left), min_prec(right)) >= N - 2 * C.slack);
  }
}

TEST_CASE("group law error cases") {
  auto Q5 = make_base_field(5);
  const TateCurve C = curve_coefficients(Z(Q5, 25, 40));
  const TatePoint off = TatePoint::affine(Z(Q5, 1, 40), Z(Q5, 1, 40));
  CHECK(kind_of([&] { curve_add(C, off, TatePoint::identity()); }) == ErrorKind::OffCurveInput);
  // x known only mod 5^5, y shifted by 5^5: still on the curve to that
  // precision, equal x, but y neither equal nor opposite.
  const TatePoint P = phi(C, Z(Q5, 7, 40));
  REQUIRE(P.x.shift() >= 0);
  REQUIRE(P.y.shift() >= 0);
  const TatePoint Q = TatePoint::affine(P.x.with_prec(5), P.y + Z(Q5, 3125, 40));
  REQUIRE(on_curve(C, Q));
  CHECK(kind_of([&] { curve_add(C, P, Q); }) == ErrorKind::PrecisionCollapse);
}

TEST_CASE("j-invariant") {
  // the oracle's own q-expansion: 1/q + 744 + 196884 q + ...
  const std::size_t L = 44;
  const auto e4 = oracle::eisenstein_e4(L);
  const auto jq = oracle::series_mul(oracle::series_mul(oracle::series_mul(e4, e4, L), e4, L),
                                     oracle::series_inverse(oracle::delta_over_q(L), L), L);
  CHECK(jq[0] == 1);
  CHECK(jq[1] == 744);
  CHECK(jq[2] == 196884);
  CHECK(jq[3] == 21493760);

  for (const auto& [p, qv] : std::vector<std::pair<long, long>>{{2, 4}, {3, 9}, {5, 5}, {5, 25}, {7, 7}}) {
    auto F = make_base_field(p);
    const TateCurve C = curve_coefficients(Z(F, qv, 40));
    const Element j = j_invariant(C);
    REQUIRE(j.valuation().is_exact());
    CHECK(j.valuation().value == -C.q.valuation().value);
    const Element rest = j - C.q.inverse() - Z(F, 744, 40);
    CHECK(rest.valuation().value >= C.q.valuation().value);
    // 196884 q is the next term, so the bound is attained unless p | 196884
    if (196884 % p != 0) CHECK(rest.valuation().value == C.q.valuation().value);
    // c4^3 / Delta with Delta = q prod (1 - q^n)^24 and c4 = E4
    const mpq_class qq = qv;
    const mpq_class exact = oracle::evaluate(e4, qq) * oracle::evaluate(e4, qq) * oracle::evaluate(e4, qq) /
                            (qq * oracle::evaluate(oracle::delta_over_q(L), qq));
    CHECK(oracle::matches(j, exact));
    CHECK(j.abs_prec() >= 40 - 4 * C.q.shift());
  }
}

TEST_CASE("doubled precision consistency") {
  auto Q5 = make_base_field(5);
  const long N = 30;
  const TateCurve C = curve_coefficients(Z(Q5, 25, N));
  const TateCurve C2 = curve_coefficients(Z(Q5, 25, 2 * N));
  CHECK(agree(C.a4, C2.a4));
  CHECK(agree(C.a6, C2.a6));
  CHECK(agree(j_invariant(C), j_invariant(C2)));
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(4, "tate-2n", t);
    const Element u_hi = random_fundamental_point(C2.q, 2 * N, rng);
    const Element u = u_hi.with_prec(N);
    const TatePoint P = phi(C, u);
    const TatePoint P2 = phi(C2, u_hi);
    CHECK(agree(P.x, P2.x));
    CHECK(agree(P.y, P2.y));
    CHECK(P2.prec() > P.prec());
  }
}

TEST_CASE("verify_homomorphism raises working precision only for lost digits") {
  auto Q5 = make_base_field(5);
  const Element q = Z(Q5, 25, 40);
  const TateCurve C = curve_coefficients(q, 10);
  // both u of valuation 1 with u1 u2 / q near 1 and x(u1) = x(u2) mod pi^4:
  // at 40 digits the chord formula certifies only 29 digits of y
  Rng rng(1, "verify-hom", 6);
  const Element u1 = random_fundamental_point(q, 40, rng);
  const Element u2 = random_fundamental_point(q, 40, rng);
  const TatePoint lhs = phi(C, u1 * u2);
  const TatePoint rhs = curve_add(C, phi(C, u1), phi(C, u2));
  const Element dy = lhs.y - rhs.y;
  CHECK(dy.is_zero());
  CHECK(dy.abs_prec() < 30);
  const HomomorphismCheck h = verify_homomorphism(q, u1, u2, 40, 30, 10);
  CHECK(h.ok);
  CHECK_FALSE(h.disagrees);
  CHECK(h.working_prec == 50);
  CHECK(h.residual_digits >= 30);

  // exact literals certify at the requested precision
  const HomomorphismCheck small = verify_homomorphism(q, Z(Q5, 2, 40), Z(Q5, 3, 40), 40, 30, 10);
  CHECK(small.ok);
  CHECK(small.working_prec == 40);

  // u1 u2 = q lies in the kernel
  const Element u = Z(Q5, 7, 40);
  const HomomorphismCheck ker = verify_homomorphism(q, q * u, u.inverse(), 40, 30, 10);
  CHECK(ker.ok);
  CHECK(ker.both_identity);
}
