#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "padic_tate/field.hpp"
#include "padic_tate/rational.hpp"

namespace padic_tate {

/// Valuation of an element at finite precision: either known exactly or only
/// bounded below (all known digits vanish).
struct ValuationResult {
  enum class Tag { exact, at_least };
  Tag tag = Tag::exact;
  Rational value;

  bool is_exact() const { return tag == Tag::exact; }
  /// True when the valuation is certainly >= bound.
  bool certainly_at_least(const Rational& bound) const { return value >= bound; }
  std::string to_string() const;
};

/// One pi-adic digit. For ramified fields a single residue in [0, p); for
/// unramified fields the f coordinates of a residue-field element.
using ResidueDigit = std::vector<long>;

/// Element of a finite extension of Q_p known modulo pi^abs_prec.
///
/// Stored as pi^shift * unit, where `unit` is a unit of the valuation ring
/// given by its Z_p-coordinates. For ramified layouts the coordinates are
/// with respect to 1, pi, ..., pi^(e-1); for unramified with respect to
/// 1, t, ..., t^(f-1). An element whose known digits all vanish is an
/// imprecise zero: shift == abs_prec and every coordinate is zero.
///
/// Precision follows the absolute model: add/sub keep min(prec); mul keeps
/// min(prec_a + shift_b, prec_b + shift_a); div keeps the relative precision.
class Element {
 public:
  Element() = default;

  static Element zero(const Field& field, long abs_prec);
  static Element one(const Field& field, long abs_prec);
  static Element from_integer(const Field& field, const mpz_class& n, long abs_prec);
  static Element from_rational(const Field& field, const mpz_class& num, const mpz_class& den,
                               long abs_prec);
  static Element uniformizer_power(const Field& field, long k, long abs_prec);
  /// The generator t of an unramified extension (pi for ramified layouts).
  static Element generator(const Field& field, long abs_prec);
  /// Builds sum coords[i] * basis_i exactly, then reduces mod pi^abs_prec.
  static Element from_coordinates(const Field& field, const std::vector<mpz_class>& coords,
                                  long abs_prec);
  /// Builds sum digits[i] * pi^(lowest + i) at precision abs_prec.
  static Element from_digits(const Field& field, long lowest, const std::vector<ResidueDigit>& digits,
                             long abs_prec);

  const Field& field() const { return field_; }
  long shift() const { return shift_; }
  long abs_prec() const { return abs_prec_; }
  long rel_prec() const { return abs_prec_ - shift_; }
  const std::vector<mpz_class>& unit() const { return unit_; }

  /// True when no nonzero digit is known.
  bool is_zero() const { return shift_ >= abs_prec_; }
  ValuationResult valuation() const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  /// Throws DivisionByImpreciseZero when b is an imprecise zero.
  friend Element operator/(const Element& a, const Element& b);

  /// Newton iteration z <- z(2 - az) from the residue-field inverse.
  Element inverse() const;
  Element pow(long k) const;

  /// Multiplication and division by exact integers; precision shifts by the
  /// integer's valuation.
  Element mul_int(const mpz_class& n) const;
  Element div_int(const mpz_class& n) const;
  Element mul_int(long n) const { return mul_int(mpz_class(n)); }
  Element div_int(long n) const { return div_int(mpz_class(n)); }
  /// Multiplies by pi^k exactly (k may be negative).
  Element mul_pi_power(long k) const;

  /// Same value, precision lowered to min(abs_prec, prec).
  Element with_prec(long prec) const;
  /// The known digits read as an exact value, then known to prec. Below
  /// abs_prec this is with_prec.
  Element lift(long prec) const;

  /// An exact constant in the same field, known to abs_prec.
  Element constant(const mpz_class& n, long abs_prec) const {
    return from_integer(field_, n, abs_prec);
  }

  /// The first `count` pi-adic digits of the unit part (digit i multiplies
  /// pi^(shift + i)). Requires count <= rel_prec for nonzero elements.
  std::vector<ResidueDigit> digits(long count) const;

  /// True when a and b agree modulo pi^min(prec) (their difference has no
  /// known nonzero digit).
  friend bool agree(const Element& a, const Element& b);

  /// Canonical text form "d0 + d1*pi + ... + O(pi^N)".
  std::string to_string() const;
  /// The known digits as an element literal that parse_element reads back
  /// (at the same precision) to this element; "0" for an imprecise zero.
  std::string to_literal() const;

  /// Structural equality: same field, precision, shift and digits.
  friend bool operator==(const Element& a, const Element& b);

 private:
  Element(Field field, long shift, long abs_prec, std::vector<mpz_class> unit)
      : field_(std::move(field)), shift_(shift), abs_prec_(abs_prec), unit_(std::move(unit)) {}

  // Builds pi^shift * w where w is integral (not necessarily a unit) and
  // known mod pi^(abs_prec - shift); factors out the valuation of w.
  static Element normalize(const Field& field, long shift, long abs_prec, std::vector<mpz_class> w);

  Field field_;
  long shift_ = 0;
  long abs_prec_ = 0;
  std::vector<mpz_class> unit_;
};

void require_same_field(const Element& a, const Element& b);

namespace raw {
// Coordinate-vector arithmetic on the valuation ring, exposed for the
// series and relation modules. `rel` is a relative precision in pi-digits.

/// pi-adic valuation of an integral vector known mod pi^rel (rel if zero).
long valuation(const FieldDescriptor& F, const std::vector<mpz_class>& w, long rel);
/// Canonical reduction mod pi^rel.
void reduce(const FieldDescriptor& F, std::vector<mpz_class>& w, long rel);
/// Product reduced by the defining relation, coordinates mod p^K.
std::vector<mpz_class> mul(const FieldDescriptor& F, const std::vector<mpz_class>& a,
                           const std::vector<mpz_class>& b, long K);
/// Number of p-adic digits needed in every coordinate to hold pi^rel info.
long coordinate_digits(const FieldDescriptor& F, long rel);

}  // namespace raw

}  // namespace padic_tate
