#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace padic_tate {

enum class ExtensionKind { base, eisenstein, unramified };

/// A finite extension of Q_p in which elements live.
///
/// Three shapes are supported:
///   base        Q_p itself, uniformizer p.
///   eisenstein  Q_p(pi) with pi^e = c*p, c an integer prime to p. Totally
///               ramified of degree e; v(pi) = 1/e.
///   unramified  Q_p(t) with t a root of a monic integer polynomial of degree
///               f that stays irreducible mod p. Uniformizer p.
///
/// Valuations are normalised with v(p) = 1, so the value group is (1/e)Z.
/// Internally the base field is handled as the eisenstein case e = 1, c = 1.
class FieldDescriptor {
 public:
  long p() const { return p_; }
  ExtensionKind kind() const { return kind_; }
  int e() const { return e_; }
  int f() const { return f_; }
  /// Number of Z_p-coordinates of an element (e for ramified, f for unramified).
  int degree() const { return kind_ == ExtensionKind::unramified ? f_ : e_; }
  bool ramified_layout() const { return kind_ != ExtensionKind::unramified; }

  /// The constant c in pi^e = c*p (1 for the base field).
  const mpz_class& eisenstein_c() const { return c_; }
  /// Monic defining polynomial, constant term first (unramified only).
  const std::vector<long>& modulus() const { return modulus_; }

  /// p^k, cached per thread.
  const mpz_class& p_power(long k) const;

  /// Human-readable form, e.g. "Q_5", "Q_5(pi), pi^4 = -1*5".
  std::string describe() const;
  /// Extension spec string accepted by make_field ("base", "eisenstein:4:-1",
  /// "unramified:1,1,1").
  std::string spec_string() const;

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b);

 private:
  friend std::shared_ptr<const FieldDescriptor> make_base_field(long p);
  friend std::shared_ptr<const FieldDescriptor> make_eisenstein_field(long p, int e, long c);
  friend std::shared_ptr<const FieldDescriptor> make_unramified_field(long p,
                                                                      std::vector<long> modulus);

  long p_ = 2;
  ExtensionKind kind_ = ExtensionKind::base;
  int e_ = 1;
  int f_ = 1;
  mpz_class c_ = 1;
  std::vector<long> modulus_;
};

using Field = std::shared_ptr<const FieldDescriptor>;

bool is_prime(long n);

Field make_base_field(long p);
/// Throws NonUnitEisensteinConstant when p | c.
Field make_eisenstein_field(long p, int e, long c);
/// `modulus` lists coefficients constant-term first and must be monic.
/// Irreducibility mod p is checked by exhaustive factor search (degree <= 8).
Field make_unramified_field(long p, std::vector<long> modulus);

/// Parses an extension spec: "base", "eisenstein:<e>:<c>" or
/// "unramified:<a0>,<a1>,...,1".
Field make_field(long p, std::string_view spec);

/// True when the polynomial (constant term first, any degree >= 1) has no
/// factor of degree 1..deg/2 over F_p. Brute force over monic candidates.
bool irreducible_mod_p(const std::vector<long>& poly, long p);

}  // namespace padic_tate
