#include "padic_tate/element.hpp"

#include <algorithm>
#include <sstream>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

using Coords = std::vector<mpz_class>;

long ceil_div(long a, long b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

long vp(const mpz_class& n, long p) {
  if (n == 0) return 0;
  mpz_class tmp;
  mpz_class pp(p);
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

// n / p^vp(n)
mpz_class unit_part(const mpz_class& n, long p) {
  mpz_class tmp;
  mpz_class pp(p);
  mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
  return tmp;
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (m == 1) return 0;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorKind::InvalidArgument, "value is not invertible modulo p^k");
  }
  return r;
}

void mod_in_place(mpz_class& a, const mpz_class& m) { mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()); }

// c^k mod p^K for any integer k (c prime to p).
mpz_class c_power(const FieldDescriptor& F, long k, long K) {
  const mpz_class& M = F.p_power(K);
  mpz_class base = F.eisenstein_c();
  if (k < 0) {
    base = mod_inverse(base, M);
    k = -k;
  }
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k), M.get_mpz_t());
  return r;
}

Coords zeros(const FieldDescriptor& F) { return Coords(static_cast<std::size_t>(F.degree()), 0); }

// w * pi^k for k >= 0, coordinates mod p^K.
void mul_pi_power_raw(const FieldDescriptor& F, Coords& w, long k, long K) {
  if (k <= 0) return;
  const mpz_class& M = F.p_power(K);
  if (!F.ramified_layout()) {
    for (auto& a : w) {
      a *= F.p_power(k);
      mod_in_place(a, M);
    }
    return;
  }
  const long e = F.e();
  const long blocks = k / e;
  const long single = k % e;
  if (blocks > 0) {
    // pi^(e*blocks) = (c p)^blocks
    const mpz_class factor = c_power(F, blocks, K) * F.p_power(blocks);
    for (auto& a : w) {
      a *= factor;
      mod_in_place(a, M);
    }
  }
  const mpz_class cp = F.eisenstein_c() * F.p();
  for (long s = 0; s < single; ++s) {
    mpz_class top = w.back();
    for (std::size_t i = w.size() - 1; i > 0; --i) w[i] = w[i - 1];
    w[0] = top * cp;
    mod_in_place(w[0], M);
  }
}

// w / pi^k where v(w) >= k, coordinates mod p^K.
void div_pi_power_raw(const FieldDescriptor& F, Coords& w, long k, long K) {
  if (k <= 0) return;
  const mpz_class& M = F.p_power(K);
  if (!F.ramified_layout()) {
    for (auto& a : w) {
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), F.p_power(k).get_mpz_t());
    }
    return;
  }
  const long e = F.e();
  const long blocks = k / e;
  const long single = k % e;
  if (blocks > 0) {
    const mpz_class cinv = c_power(F, -blocks, K);
    for (auto& a : w) {
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), F.p_power(blocks).get_mpz_t());
      a *= cinv;
      mod_in_place(a, M);
    }
  }
  if (single > 0) {
    const mpz_class cinv = c_power(F, -1, K);
    const mpz_class pp(F.p());
    for (long s = 0; s < single; ++s) {
      mpz_class low = w[0];
      mpz_divexact(low.get_mpz_t(), low.get_mpz_t(), pp.get_mpz_t());
      for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = w[i + 1];
      w.back() = low * cinv;
      mod_in_place(w.back(), M);
    }
  }
}

// Representative of x / pi^s modulo pi^rel with coordinates mod p^K.
Coords lift(const Element& x, long s, long rel, long K) {
  const auto& F = *x.field();
  Coords w = zeros(F);
  const long offset = x.shift() - s;
  if (x.is_zero() || offset >= rel) return w;
  w = x.unit();
  mul_pi_power_raw(F, w, offset, K);
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// raw coordinate arithmetic

namespace raw {

long coordinate_digits(const FieldDescriptor& F, long rel) {
  if (rel <= 0) return 0;
  return F.ramified_layout() ? ceil_div(rel, F.e()) : rel;
}

void reduce(const FieldDescriptor& F, std::vector<mpz_class>& w, long rel) {
  if (rel <= 0) {
    for (auto& a : w) a = 0;
    return;
  }
  if (F.ramified_layout()) {
    const long e = F.e();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const long k = std::max(0L, ceil_div(rel - static_cast<long>(i), e));
      mod_in_place(w[i], F.p_power(k));
    }
  } else {
    const mpz_class& M = F.p_power(rel);
    for (auto& a : w) mod_in_place(a, M);
  }
}

long valuation(const FieldDescriptor& F, const std::vector<mpz_class>& w, long rel) {
  long best = rel;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    const long v = F.ramified_layout() ? F.e() * vp(w[i], F.p()) + static_cast<long>(i)
                                       : vp(w[i], F.p());
    best = std::min(best, v);
  }
  return best;
}

std::vector<mpz_class> mul(const FieldDescriptor& F, const std::vector<mpz_class>& a,
                           const std::vector<mpz_class>& b, long K) {
  const std::size_t n = a.size();
  const mpz_class& M = F.p_power(K);
  if (n == 1) {
    mpz_class r = a[0] * b[0];
    mod_in_place(r, M);
    return {r};
  }
  Coords prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  if (F.ramified_layout()) {
    const mpz_class cp = F.eisenstein_c() * F.p();
    for (std::size_t k = 2 * n - 2; k >= n; --k) {
      prod[k - n] += prod[k] * cp;
    }
  } else {
    const auto& mod = F.modulus();
    for (std::size_t k = 2 * n - 2; k >= n; --k) {
      if (prod[k] != 0) {
        mod_in_place(prod[k], M);
        for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= prod[k] * mod[i];
      }
    }
  }
  prod.resize(n);
  for (auto& c : prod) mod_in_place(c, M);
  return prod;
}

}  // namespace raw

// ---------------------------------------------------------------------------

std::string ValuationResult::to_string() const {
  return (tag == Tag::exact ? "" : ">=") + value.to_string();
}

void require_same_field(const Element& a, const Element& b) {
  if (a.field() == b.field()) return;
  if (!a.field() || !b.field() || !(*a.field() == *b.field())) {
    throw Error(ErrorKind::FieldMismatch, "operands live in different fields");
  }
}

Element Element::normalize(const Field& field, long shift, long abs_prec, std::vector<mpz_class> w) {
  const auto& F = *field;
  const long rel = abs_prec - shift;
  if (rel <= 0) return zero(field, abs_prec);
  raw::reduce(F, w, rel);
  const long v = raw::valuation(F, w, rel);
  if (v >= rel) return zero(field, abs_prec);
  if (v > 0) {
    div_pi_power_raw(F, w, v, raw::coordinate_digits(F, rel) + 1);
    raw::reduce(F, w, rel - v);
  }
  return Element(field, shift + v, abs_prec, std::move(w));
}

Element Element::zero(const Field& field, long abs_prec) {
  return Element(field, abs_prec, abs_prec, zeros(*field));
}

Element Element::one(const Field& field, long abs_prec) { return from_integer(field, 1, abs_prec); }

Element Element::from_integer(const Field& field, const mpz_class& n, long abs_prec) {
  return from_rational(field, n, 1, abs_prec);
}

Element Element::from_rational(const Field& field, const mpz_class& num, const mpz_class& den,
                               long abs_prec) {
  const auto& F = *field;
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (num == 0) return zero(field, abs_prec);
  const long p = F.p();
  const long v = vp(num, p) - vp(den, p);
  const long shift = F.ramified_layout() ? v * F.e() : v;
  if (shift >= abs_prec) return zero(field, abs_prec);
  const long rel = abs_prec - shift;
  const long K = raw::coordinate_digits(F, rel) + 1;
  const mpz_class& M = F.p_power(K);
  mpz_class u = unit_part(num, p) * mod_inverse(unit_part(den, p), M);
  if (F.ramified_layout()) u *= c_power(F, -v, K);
  mod_in_place(u, M);
  Coords w = zeros(F);
  w[0] = u;
  return normalize(field, shift, abs_prec, std::move(w));
}

Element Element::uniformizer_power(const Field& field, long k, long abs_prec) {
  if (k >= abs_prec) return zero(field, abs_prec);
  Coords w = zeros(*field);
  w[0] = 1;
  return Element(field, k, abs_prec, std::move(w));
}

Element Element::generator(const Field& field, long abs_prec) {
  if (field->ramified_layout()) return uniformizer_power(field, 1, abs_prec);
  Coords w = zeros(*field);
  w[1] = 1;
  return normalize(field, 0, abs_prec, std::move(w));
}

Element Element::from_coordinates(const Field& field, const std::vector<mpz_class>& coords,
                                  long abs_prec) {
  if (static_cast<int>(coords.size()) != field->degree()) {
    throw Error(ErrorKind::InvalidArgument, "coordinate count does not match field degree");
  }
  return normalize(field, 0, abs_prec, coords);
}

Element Element::from_digits(const Field& field, long lowest, const std::vector<ResidueDigit>& digits,
                             long abs_prec) {
  const auto& F = *field;
  const long rel = abs_prec - lowest;
  if (rel <= 0) return zero(field, abs_prec);
  const long K = raw::coordinate_digits(F, rel) + 1;
  Coords w = zeros(F);
  for (std::size_t i = digits.size(); i-- > 0;) {
    mul_pi_power_raw(F, w, 1, K);
    const auto& d = digits[i];
    if (F.ramified_layout()) {
      w[0] += d.empty() ? 0 : d[0];
    } else {
      for (std::size_t j = 0; j < d.size() && j < w.size(); ++j) w[j] += d[j];
    }
  }
  return normalize(field, lowest, abs_prec, std::move(w));
}

ValuationResult Element::valuation() const {
  const long e = field_->ramified_layout() ? field_->e() : 1;
  if (is_zero()) return {ValuationResult::Tag::at_least, Rational(abs_prec_, e)};
  return {ValuationResult::Tag::exact, Rational(shift_, e)};
}

Element Element::operator-() const {
  if (is_zero()) return *this;
  Coords w = unit_;
  for (auto& a : w) a = -a;
  Element r(field_, shift_, abs_prec_, std::move(w));
  raw::reduce(*field_, r.unit_, rel_prec());
  return r;
}

Element operator+(const Element& a, const Element& b) {
  require_same_field(a, b);
  const long N = std::min(a.abs_prec_, b.abs_prec_);
  const long s = std::min(a.shift_, b.shift_);
  if (s >= N) return Element::zero(a.field_, N);
  const long rel = N - s;
  const long K = raw::coordinate_digits(*a.field_, rel) + 1;
  Coords w = lift(a, s, rel, K);
  const Coords wb = lift(b, s, rel, K);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
  return Element::normalize(a.field_, s, N, std::move(w));
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator*(const Element& a, const Element& b) {
  require_same_field(a, b);
  const long N = std::min(a.abs_prec_ + b.shift_, b.abs_prec_ + a.shift_);
  if (a.is_zero() || b.is_zero()) return Element::zero(a.field_, N);
  const long s = a.shift_ + b.shift_;
  const long rel = N - s;
  const long K = raw::coordinate_digits(*a.field_, rel) + 1;
  return Element::normalize(a.field_, s, N, raw::mul(*a.field_, a.unit_, b.unit_, K));
}

Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

Element Element::inverse() const {
  if (is_zero()) {
    throw Error(ErrorKind::DivisionByImpreciseZero, "cannot invert an element with no known nonzero digit");
  }
  const auto& F = *field_;
  const long rel = rel_prec();
  const long K = raw::coordinate_digits(F, rel) + 1;
  const mpz_class& M = F.p_power(K);
  // Residue-field inverse of the leading digit.
  Coords z = zeros(F);
  if (F.ramified_layout()) {
    mpz_class d = unit_[0];
    mod_in_place(d, F.p_power(1));
    z[0] = mod_inverse(d, F.p_power(1));
  } else {
    Coords base = unit_;
    for (auto& a : base) mod_in_place(a, F.p_power(1));
    Coords acc = zeros(F);
    acc[0] = 1;
    mpz_class exponent;
    mpz_ui_pow_ui(exponent.get_mpz_t(), static_cast<unsigned long>(F.p()),
                  static_cast<unsigned long>(F.f()));
    exponent -= 2;
    for (std::size_t bit = mpz_sizeinbase(exponent.get_mpz_t(), 2); bit-- > 0;) {
      acc = raw::mul(F, acc, acc, 1);
      if (mpz_tstbit(exponent.get_mpz_t(), bit)) acc = raw::mul(F, acc, base, 1);
    }
    z = acc;
  }
  // Each step doubles the number of correct pi-adic digits.
  for (long correct = 1; correct < rel; correct *= 2) {
    Coords az = raw::mul(F, unit_, z, K);
    for (auto& c : az) c = -c;
    az[0] += 2;
    for (auto& c : az) mod_in_place(c, M);
    z = raw::mul(F, z, az, K);
  }
  raw::reduce(F, z, rel);
  return Element(field_, -shift_, rel - shift_, std::move(z));
}

Element Element::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return one(field_, is_zero() ? abs_prec_ : rel_prec());
  Element result = *this;
  Element base = *this;
  bool started = false;
  while (k > 0) {
    if (k & 1) {
      result = started ? result * base : base;
      started = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Element Element::mul_int(const mpz_class& n) const {
  const auto& F = *field_;
  if (n == 0) return zero(field_, abs_prec_);
  const long v = vp(n, F.p());
  const long dv = F.ramified_layout() ? v * F.e() : v;
  if (is_zero()) return zero(field_, abs_prec_ + dv);
  const long rel = rel_prec();
  const long K = raw::coordinate_digits(F, rel) + 1;
  const mpz_class& M = F.p_power(K);
  mpz_class m = unit_part(n, F.p());
  if (F.ramified_layout()) m *= c_power(F, -v, K);
  mod_in_place(m, M);
  Coords w = unit_;
  for (auto& a : w) a *= m;
  return normalize(field_, shift_ + dv, abs_prec_ + dv, std::move(w));
}

Element Element::div_int(const mpz_class& n) const {
  const auto& F = *field_;
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by the integer zero");
  const long v = vp(n, F.p());
  const long dv = F.ramified_layout() ? v * F.e() : v;
  if (is_zero()) return zero(field_, abs_prec_ - dv);
  const long rel = rel_prec();
  const long K = raw::coordinate_digits(F, rel) + 1;
  const mpz_class& M = F.p_power(K);
  mpz_class m = mod_inverse(unit_part(n, F.p()), M);
  if (F.ramified_layout()) m *= c_power(F, v, K);
  mod_in_place(m, M);
  Coords w = unit_;
  for (auto& a : w) a *= m;
  return normalize(field_, shift_ - dv, abs_prec_ - dv, std::move(w));
}

Element Element::mul_pi_power(long k) const {
  Element r = *this;
  r.shift_ += k;
  r.abs_prec_ += k;
  return r;
}

Element Element::lift(long prec) const {
  if (prec <= abs_prec_) return with_prec(prec);
  if (is_zero()) return zero(field_, prec);
  return normalize(field_, shift_, prec, unit_);
}

Element Element::with_prec(long prec) const {
  if (prec >= abs_prec_) return *this;
  if (shift_ >= prec) return zero(field_, prec);
  Element r = *this;
  r.abs_prec_ = prec;
  raw::reduce(*field_, r.unit_, r.rel_prec());
  return r;
}

std::vector<ResidueDigit> Element::digits(long count) const {
  const auto& F = *field_;
  std::vector<ResidueDigit> out;
  const std::size_t width = F.ramified_layout() ? 1 : static_cast<std::size_t>(F.f());
  if (is_zero()) {
    out.assign(static_cast<std::size_t>(std::max(0L, count)), ResidueDigit(width, 0));
    return out;
  }
  if (count > rel_prec()) {
    throw Error(ErrorKind::InsufficientPrecision, "requested more digits than are known");
  }
  const long K = raw::coordinate_digits(F, rel_prec()) + 1;
  Coords w = unit_;
  const mpz_class pp(F.p());
  for (long i = 0; i < count; ++i) {
    ResidueDigit d(width, 0);
    if (F.ramified_layout()) {
      mpz_class r = w[0];
      mod_in_place(r, pp);
      d[0] = r.get_si();
      w[0] -= r;
    } else {
      for (std::size_t j = 0; j < width; ++j) {
        mpz_class r = w[j];
        mod_in_place(r, pp);
        d[j] = r.get_si();
        w[j] -= r;
      }
    }
    out.push_back(std::move(d));
    if (i + 1 < count) div_pi_power_raw(F, w, 1, K);
  }
  return out;
}

bool agree(const Element& a, const Element& b) { return (a - b).is_zero(); }

namespace {

std::string format_digit(const ResidueDigit& d) {
  bool only_constant = true;
  for (std::size_t i = 1; i < d.size(); ++i) only_constant = only_constant && d[i] == 0;
  if (only_constant) return std::to_string(d[0]);
  std::string s = "(";
  bool first = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (!first) s += " + ";
    first = false;
    if (i == 0) {
      s += std::to_string(d[i]);
    } else {
      if (d[i] != 1) s += std::to_string(d[i]) + "*";
      s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return s + ")";
}

bool digit_is_zero(const ResidueDigit& d) {
  return std::all_of(d.begin(), d.end(), [](long x) { return x == 0; });
}

}  // namespace

std::string Element::to_string() const {
  std::ostringstream os;
  if (!is_zero()) {
    const auto ds = digits(rel_prec());
    bool first = true;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (digit_is_zero(ds[i])) continue;
      if (!first) os << " + ";
      first = false;
      const long power = shift_ + static_cast<long>(i);
      os << format_digit(ds[i]);
      if (power == 1) {
        os << "*pi";
      } else if (power != 0) {
        os << "*pi^" << power;
      }
    }
    os << " + ";
  }
  os << "O(pi^" << abs_prec_ << ")";
  return os.str();
}

std::string Element::to_literal() const {
  if (is_zero()) return "0";
  const auto& F = *field_;
  const auto ds = digits(rel_prec());
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const long power = shift_ + static_cast<long>(i);
    if (F.ramified_layout()) {
      const long d = ds[i][0];
      if (d == 0) continue;
      std::string t = std::to_string(d);
      if (power != 0) t += "*pi^" + std::to_string(power);
      terms.push_back(std::move(t));
      continue;
    }
    // pi = p: fold p^power into the rational coefficient of t^j
    for (std::size_t j = 0; j < ds[i].size(); ++j) {
      if (ds[i][j] == 0) continue;
      const mpz_class pk = F.p_power(std::abs(power));
      std::string t = power >= 0 ? mpz_class(ds[i][j] * pk).get_str()
                                 : std::to_string(ds[i][j]) + "/" + pk.get_str();
      if (j > 0) t += "*t^" + std::to_string(j);
      terms.push_back(std::move(t));
    }
  }
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " + ") + t;
  return out;
}

bool operator==(const Element& a, const Element& b) {
  if (a.field_ != b.field_ && !(a.field_ && b.field_ && *a.field_ == *b.field_)) return false;
  return a.shift_ == b.shift_ && a.abs_prec_ == b.abs_prec_ && a.unit_ == b.unit_;
}

}  // namespace padic_tate
