#pragma once

// Exact-rational reference computations used to freeze expected values.
// Everything here works on plain GMP integers/rationals and shares no code
// path with the p-adic element arithmetic beyond reading an element's stored
// coordinates.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padic_tate/element.hpp"

namespace oracle {

inline long vp(mpz_class n, long p) {
  if (n == 0) return 1L << 40;
  long v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  return v;
}

inline long vp(const mpq_class& r, long p) {
  if (r == 0) return 1L << 40;
  return vp(mpz_class(r.get_num()), p) - vp(mpz_class(r.get_den()), p);
}

inline mpz_class pk(long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

/// r mod p^k for a p-integral rational r, in [0, p^k).
inline mpz_class mod_pk(const mpq_class& r, long p, long k) {
  const mpz_class M = pk(p, k);
  if (k <= 0) return 0;
  mpz_class den = r.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0) {
    throw std::runtime_error("oracle: rational is not p-integral");
  }
  mpz_class out = mpz_class(r.get_num()) * inv;
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), M.get_mpz_t());
  return out;
}

inline long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

/// Coordinates (basis 1, pi, ..., pi^(e-1)) of pi^s * unit for s >= 0 in a
/// ramified layout, computed by repeated multiplication with pi (pi^e = c p).
inline std::vector<mpz_class> value_coordinates(const padic_tate::Element& x) {
  const auto& F = *x.field();
  std::vector<mpz_class> w = x.unit();
  if (x.is_zero()) return std::vector<mpz_class>(w.size(), 0);
  const mpz_class cp = F.eisenstein_c() * F.p();
  for (long s = 0; s < x.shift(); ++s) {
    mpz_class top = w.back() * cp;
    for (std::size_t i = w.size() - 1; i > 0; --i) w[i] = w[i - 1];
    w[0] = top;
  }
  return w;
}

/// True when the element equals the exact value sum exact[i] * pi^i modulo
/// pi^abs_prec (ramified layouts, base field included). Handles negative
/// shifts by scaling both sides by (c p)^k = pi^(k e).
inline bool matches(const padic_tate::Element& x, std::vector<mpq_class> exact) {
  const auto& F = *x.field();
  const long e = F.e();
  const long p = F.p();
  exact.resize(static_cast<std::size_t>(e), 0);
  padic_tate::Element y = x;
  if (x.shift() < 0) {
    const long k = ceil_div(-x.shift(), e);
    mpz_class cpk;
    mpz_class cp = F.eisenstein_c() * p;
    mpz_pow_ui(cpk.get_mpz_t(), cp.get_mpz_t(), static_cast<unsigned long>(k));
    for (auto& c : exact) c *= cpk;
    y = x.mul_pi_power(k * e);
  }
  const auto coords = value_coordinates(y);
  for (long i = 0; i < e; ++i) {
    const long digits = std::max(0L, ceil_div(y.abs_prec() - i, e));
    const mpq_class diff = mpq_class(coords[static_cast<std::size_t>(i)]) - exact[static_cast<std::size_t>(i)];
    if (diff != 0 && vp(diff, p) < digits) return false;
  }
  return true;
}

inline bool matches(const padic_tate::Element& x, const mpq_class& exact) {
  return matches(x, std::vector<mpq_class>{exact});
}

using Coords = std::vector<mpq_class>;

/// Product in Q[pi]/(pi^e - c p), coordinates in the basis 1, pi, ..., pi^(e-1).
inline Coords ram_mul(const Coords& a, const Coords& b, long e, const mpz_class& cp) {
  Coords prod(static_cast<std::size_t>(2 * e), 0);
  for (long i = 0; i < e; ++i)
    for (long j = 0; j < e; ++j) prod[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  for (long k = 2 * e - 1; k >= e; --k) prod[static_cast<std::size_t>(k - e)] += prod[k] * cp;
  prod.resize(static_cast<std::size_t>(e));
  return prod;
}

/// sum_{n <= terms} x^n / n!, exactly.
inline Coords exp_partial_sum(const Coords& x, long terms, long e, const mpz_class& cp) {
  Coords sum(static_cast<std::size_t>(e), 0), term(static_cast<std::size_t>(e), 0);
  sum[0] = 1;
  term[0] = 1;
  for (long n = 1; n <= terms; ++n) {
    term = ram_mul(term, x, e, cp);
    for (auto& c : term) c /= n;
    for (long i = 0; i < e; ++i) sum[i] += term[i];
  }
  return sum;
}

/// sum_{1 <= n <= terms} (-1)^(n+1) z^n / n, exactly.
inline Coords log_partial_sum(const Coords& z, long terms, long e, const mpz_class& cp) {
  Coords sum(static_cast<std::size_t>(e), 0), pw(static_cast<std::size_t>(e), 0);
  pw[0] = 1;
  for (long n = 1; n <= terms; ++n) {
    pw = ram_mul(pw, z, e, cp);
    for (long i = 0; i < e; ++i) sum[i] += (n % 2 ? 1 : -1) * pw[i] / n;
  }
  return sum;
}

}  // namespace oracle
