#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padic_tate/element.hpp"

namespace padic_tate {

using Exponent = std::vector<int>;

/// Truncated series in O<xi_1..xi_m>: coefficients for monomials of total
/// degree <= degree_cap, each known modulo pi^coeff_prec. Monomials that are
/// not stored are O(pi^coeff_prec).
class StrictSeries {
 public:
  StrictSeries() = default;
  StrictSeries(Field field, int nvars, int degree_cap, long coeff_prec);

  /// Adds c to the coefficient of xi^exp. Throws InvalidArgument for a
  /// coefficient outside the valuation ring or a degree above the cap.
  void add_term(const Exponent& exp, const Element& c);
  static StrictSeries from_terms(Field field, int nvars, int degree_cap, long coeff_prec,
                                 const std::vector<std::pair<Exponent, Element>>& terms);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  int degree_cap() const { return degree_cap_; }
  long coeff_prec() const { return coeff_prec_; }
  const std::map<Exponent, Element>& terms() const { return terms_; }
  Element coeff(const Exponent& exp) const;
  /// Largest total degree with a stored coefficient (-1 when none).
  int total_degree() const;
  /// Largest exponent of xi_active (1-based) with a stored coefficient.
  int degree_in(int active) const;

  StrictSeries operator-() const;
  friend StrictSeries operator+(const StrictSeries& a, const StrictSeries& b);
  friend StrictSeries operator-(const StrictSeries& a, const StrictSeries& b);
  /// Truncated product; DegreeCapExceeded if a monomial above the cap has a
  /// known nonzero coefficient.
  friend StrictSeries operator*(const StrictSeries& a, const StrictSeries& b);
  StrictSeries scale(const Element& c) const;
  StrictSeries with_prec(long prec) const;

  /// True when every coefficient of a - b is an imprecise zero.
  friend bool agree(const StrictSeries& a, const StrictSeries& b);

  std::string to_string() const;

 private:
  void insert(const Exponent& exp, Element c);
  void check_compatible(const StrictSeries& other) const;

  Field field_;
  int nvars_ = 0;
  int degree_cap_ = 0;
  long coeff_prec_ = 0;
  std::map<Exponent, Element> terms_;
};

/// min over coefficient valuations; at_least when the minimum is only a bound.
ValuationResult gauss_valuation(const StrictSeries& f);

/// Decomposition f = w + eps: w holds every xi_m-pure monomial of degree <= d
/// with the xi_m^d coefficient replaced by 1, eps the rest.
struct RegularSplit {
  int d = 0;
  StrictSeries w;
  StrictSeries eps;
  ValuationResult gamma;  // gauss valuation of eps
};

/// d such that f reduces to a monic degree-d polynomial in xi_active over the
/// residue field, if any. `active` is 1-based.
std::optional<int> regular_degree(const StrictSeries& f, int active);
RegularSplit regular_split(const StrictSeries& f, int active);

struct DivisionStep {
  int iteration = 0;
  ValuationResult residual;  // gauss valuation of g - q f - r after this step
};

struct DivisionResult {
  StrictSeries q;
  StrictSeries r;
  int d = 0;
  ValuationResult gamma;
  std::vector<DivisionStep> history;
};

/// Quotient and remainder of h by a monic polynomial w in xi_active whose
/// coefficients are constants.
std::pair<StrictSeries, StrictSeries> poly_divmod(const StrictSeries& h, const StrictSeries& w, int active, int d);

/// g = q f + r with deg_{xi_active} r < d, by the fixed-point iteration
/// q <- PolyQuot_w(g - q eps). `initial_q` seeds the iteration.
DivisionResult weierstrass_divide(const StrictSeries& g, const StrictSeries& f, int active,
                                  const std::optional<StrictSeries>& initial_q = std::nullopt);

}  // namespace padic_tate
