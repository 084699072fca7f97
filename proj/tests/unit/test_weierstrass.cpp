#include <doctest.h>

#include "oracles/division.hpp"
#include "oracles/division_instances.hpp"
#include "oracles/exact.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/parse.hpp"
#include "padic_tate/random.hpp"
#include "padic_tate/series_io.hpp"
#include "padic_tate/weierstrass.hpp"
#include "unit/helpers.hpp"

using namespace padic_tate;
using testing_support::kind_of;
using testing_support::Z;

using oracle::all_zero;
using oracle::exact_of;
using oracle::Instance;
using oracle::matches_exact;
using oracle::random_instance;
using oracle::series;
using oracle::Terms;

TEST_CASE("gauss_valuation examples") {
  auto Q5 = make_base_field(5);
  CHECK(gauss_valuation(series(Q5, 1, 4, 10, {{{0}, 1}})).value == Rational(0));
  const auto g = gauss_valuation(series(Q5, 1, 4, 10, {{{1}, 5}, {{0}, 25}}));
  CHECK(g.is_exact());
  CHECK(g.value == Rational(1));
  const auto z = gauss_valuation(StrictSeries(Q5, 2, 4, 10));
  CHECK_FALSE(z.is_exact());
  CHECK(z.value == Rational(10));
  auto L = make_eisenstein_field(5, 4, -1);
  StrictSeries s(L, 2, 3, 12);
  s.add_term({1, 1}, Element::uniformizer_power(L, 3, 12));
  s.add_term({0, 2}, Element::uniformizer_power(L, 5, 12));
  CHECK(gauss_valuation(s).value == Rational(3, 4));
  CHECK(kind_of([&] { s.add_term({0, 0}, Element::uniformizer_power(L, -1, 12)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { s.add_term({3, 1}, Element::one(L, 12)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("regular_degree examples") {
  auto Q5 = make_base_field(5);
  CHECK(regular_degree(series(Q5, 2, 8, 12, {{{0, 2}, 1}, {{1, 3}, 5}}), 2) == 2);
  CHECK_FALSE(regular_degree(series(Q5, 2, 8, 12, {{{0, 1}, 5}}), 2).has_value());
  const auto f = series(Q5, 2, 8, 12, {{{0, 3}, 1}, {{0, 1}, 3}, {{0, 0}, 1}, {{1, 0}, 5}});
  CHECK(regular_degree(f, 2) == 3);
  const RegularSplit sp = regular_split(f, 2);
  CHECK(sp.d == 3);
  CHECK(sp.w.coeff({0, 3}) == Element::one(Q5, 12));
  CHECK(sp.w.coeff({0, 2}).is_zero());
  CHECK(agree(sp.w.coeff({0, 1}), Z(Q5, 3, 12)));
  CHECK(agree(sp.w.coeff({0, 0}), Z(Q5, 1, 12)));
  CHECK(sp.gamma.value == Rational(1));
  // a unit coefficient on a mixed monomial breaks regularity
  CHECK_FALSE(regular_degree(series(Q5, 2, 8, 12, {{{0, 2}, 1}, {{1, 1}, 1}}), 2).has_value());
  // reduction 2*xi^2 is not monic
  CHECK_FALSE(regular_degree(series(Q5, 2, 8, 12, {{{0, 2}, 2}}), 2).has_value());
  // leading coefficient 1 + 5: monic after moving 5*xi^2 into eps
  CHECK(regular_degree(series(Q5, 2, 8, 12, {{{0, 2}, 6}, {{1, 0}, 5}}), 2) == 2);
  StrictSeries amb = series(Q5, 2, 8, 12, {{{0, 2}, 1}});
  amb.add_term({1, 0}, Element::zero(Q5, 0));
  CHECK(kind_of([&] { regular_degree(amb, 2); }) == ErrorKind::AmbiguousAtPrecision);
  CHECK(kind_of([&] { weierstrass_divide(amb, series(Q5, 2, 8, 12, {{{0, 1}, 5}}), 2); }) == ErrorKind::NotRegular);
}

TEST_CASE("weierstrass_divide examples") {
  auto Q5 = make_base_field(5);
  const Terms fT = {{{0, 2}, 1}, {{1, 0}, 5}};
  const auto f = series(Q5, 2, 8, 12, fT);

  const auto self = weierstrass_divide(f, f, 2);
  CHECK(agree(self.q, series(Q5, 2, 8, 12, {{{0, 0}, 1}})));
  CHECK(self.r.terms().empty());

  const auto low = series(Q5, 2, 8, 12, {{{3, 1}, 7}});
  const auto lowdiv = weierstrass_divide(low, f, 2);
  CHECK(lowdiv.q.terms().empty());
  CHECK(agree(lowdiv.r, low));

  const Terms gT = {{{0, 4}, 1}};
  const auto res = weierstrass_divide(series(Q5, 2, 8, 12, gT), f, 2);
  // xi2^4 = (xi2^2 - 5 xi1)(xi2^2 + 5 xi1) + 25 xi1^2
  CHECK(agree(res.q, series(Q5, 2, 8, 12, {{{0, 2}, 1}, {{1, 0}, -5}})));
  CHECK(agree(res.r, series(Q5, 2, 8, 12, {{{2, 0}, 25}})));
  const auto ora = oracle::divide(exact_of(gT), exact_of(fT), 2, 2, 2, 8);
  REQUIRE(ora.has_value());
  CHECK(matches_exact(res.q, ora->q));
  CHECK(matches_exact(res.r, ora->r));
  CHECK(ora->q == exact_of({{{0, 2}, 1}, {{1, 0}, -5}}));
  CHECK(ora->r == exact_of({{{2, 0}, 25}}));
}

TEST_CASE("degree cap overflow is an error only for known nonzero digits") {
  auto Q5 = make_base_field(5);
  const auto f = series(Q5, 2, 2, 10, {{{0, 1}, 1}, {{2, 0}, 5}});
  CHECK(kind_of([&] { weierstrass_divide(series(Q5, 2, 2, 10, {{{0, 2}, 1}}), f, 2); }) ==
        ErrorKind::DegreeCapExceeded);
  // the overflowing product 5^10 * ... vanishes mod 5^10
  const auto tiny = series(Q5, 2, 2, 10, {{{0, 1}, 1}, {{2, 0}, 9765625}});
  CHECK_NOTHROW(weierstrass_divide(series(Q5, 2, 2, 10, {{{0, 2}, 1}}), tiny, 2));
}


TEST_CASE("division matches the exact linear solve on random integer instances") {
  auto Q5 = make_base_field(5);
  const long N = 12;
  for (std::uint64_t t = 0; t < 25; ++t) {
    Rng rng(5, "wdiv-oracle", t);
    const Instance in = random_instance(Q5, N, rng, true);
    CAPTURE(in.m);
    CAPTURE(in.d);
    CAPTURE(in.D);
    const auto res = weierstrass_divide(in.g, in.f, in.m);
    const auto ora = oracle::divide(exact_of(in.gT), exact_of(in.fT), in.m, in.m, in.d, in.D);
    REQUIRE(ora.has_value());
    CHECK(matches_exact(res.q, ora->q));
    CHECK(matches_exact(res.r, ora->r));
  }
}

TEST_CASE("division properties on random instances") {
  for (const auto& [p, spec] : std::vector<std::pair<long, std::string>>{
           {5, "base"}, {5, "eisenstein:4:-1"}, {3, "unramified:1,0,1"}, {2, "eisenstein:2:1"}}) {
    auto F = make_field(p, spec);
    CAPTURE(spec);
    const long N = 16;
    const long e = F->ramified_layout() ? F->e() : 1;
    for (std::uint64_t t = 0; t < 20; ++t) {
      Rng rng(9, "wdiv-props", t);
      const Instance in = random_instance(F, N, rng, false);
      const auto res = weierstrass_divide(in.g, in.f, in.m);
      // reconstruction
      CHECK(all_zero(in.g - res.q * in.f - res.r, N));
      // degree contract
      CHECK(res.r.degree_in(in.m) <= in.d - 1);
      // convergence rate
      for (const auto& step : res.history) {
        const Rational floor_k = std::min(Rational(N, e), res.gamma.value * Rational(step.iteration));
        CHECK(step.residual.value >= floor_k);
      }
      // uniqueness from a different starting point
      const RegularSplit sp = regular_split(in.f, in.m);
      const auto start = poly_divmod(in.g, sp.w, in.m, sp.d).first;
      const auto res2 = weierstrass_divide(in.g, in.f, in.m, start);
      CHECK(agree(res.q, res2.q));
      CHECK(agree(res.r, res2.r));
    }
  }
}

TEST_CASE("series JSON round trip") {
  for (const auto& [p, spec] : std::vector<std::pair<long, std::string>>{
           {5, "base"}, {5, "eisenstein:4:-1"}, {3, "unramified:1,0,1"}}) {
    auto F = make_field(p, spec);
    Rng rng(1, "series-json", 0);
    const Instance in = random_instance(F, 10, rng, false);
    const std::string text = series_to_json(in.g);
    const StrictSeries back = series_from_json(text, F, 10);
    CHECK(agree(back, in.g));
    CHECK(back.degree_cap() == in.g.degree_cap());
    CHECK(series_to_json(back) == text);
  }
  auto Q5 = make_base_field(5);
  const auto s = series_from_json(R"({"nvars": 2, "degree_cap": 4, "terms": [{"exp": [0, 2], "coeff": "1"},
      {"exp": [1, 0], "coeff": "5"}]})", Q5, 12);
  CHECK(regular_degree(s, 2) == 2);
  CHECK(kind_of([&] { series_from_json("{", Q5, 4); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([&] { series_from_json(R"({"nvars": 1})", Q5, 4); }) == ErrorKind::SyntaxError);
}

TEST_CASE("to_literal parses back") {
  for (const auto& [p, spec] : std::vector<std::pair<long, std::string>>{
           {5, "base"}, {7, "eisenstein:3:2"}, {3, "unramified:1,2,0,1"}, {2, "unramified:1,1,1"}}) {
    auto F = make_field(p, spec);
    for (std::uint64_t t = 0; t < 50; ++t) {
      Rng rng(2, "literal", t);
      const Element x = random_element(F, -3, 5, 12, rng);
      CHECK(parse_element(x.to_literal(), F, 12) == x);
    }
  }
}
