#include "padic_tate/field.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

long mod_p(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

// Remainder of a modulo monic b over F_p (both constant term first).
std::vector<long> poly_rem(std::vector<long> a, const std::vector<long>& b, long p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const long lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = mod_p(a[shift + i] - lead * b[i], p);
    }
    a.pop_back();
  }
  return a;
}

long parse_long(std::string_view s, std::string_view what) {
  long v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::SyntaxError, "bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool irreducible_mod_p(const std::vector<long>& poly, long p) {
  std::vector<long> f;
  f.reserve(poly.size());
  for (long c : poly) f.push_back(mod_p(c, p));
  while (!f.empty() && f.back() == 0) f.pop_back();
  const long n = static_cast<long>(f.size()) - 1;
  if (n < 1) return false;
  // Make monic.
  if (f.back() != 1) {
    long inv = 1;
    for (long k = 0; k < p - 2; ++k) inv = mod_p(inv * f.back(), p);
    for (long& c : f) c = mod_p(c * inv, p);
  }
  for (long k = 1; k <= n / 2; ++k) {
    const double candidates = std::pow(static_cast<double>(p), static_cast<double>(k));
    if (candidates > 2e7) {
      throw Error(ErrorKind::InvalidArgument, "irreducibility search space too large");
    }
    std::vector<long> g(static_cast<std::size_t>(k) + 1, 0);
    g[static_cast<std::size_t>(k)] = 1;
    const long total = static_cast<long>(candidates);
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      for (long i = 0; i < k; ++i) {
        g[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      const auto r = poly_rem(f, g, p);
      bool zero = true;
      for (long c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

const mpz_class& FieldDescriptor::p_power(long k) const {
  thread_local std::unordered_map<long, std::deque<mpz_class>> cache;
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative power of p");
  auto& powers = cache[p_];
  if (powers.empty()) powers.emplace_back(1);
  while (static_cast<long>(powers.size()) <= k) powers.push_back(powers.back() * p_);
  return powers[static_cast<std::size_t>(k)];
}

std::string FieldDescriptor::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (kind_ == ExtensionKind::eisenstein) {
    os << "(pi), pi^" << e_ << " = " << c_.get_str() << "*" << p_;
  } else if (kind_ == ExtensionKind::unramified) {
    os << "(t), ";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << modulus_[i];
      if (i > 0) os << "*t^" << i;
    }
    os << " = 0";
  }
  return os.str();
}

std::string FieldDescriptor::spec_string() const {
  switch (kind_) {
    case ExtensionKind::base: return "base";
    case ExtensionKind::eisenstein: return "eisenstein:" + std::to_string(e_) + ":" + c_.get_str();
    case ExtensionKind::unramified: {
      std::string s = "unramified:";
      for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(modulus_[i]);
      }
      return s;
    }
  }
  return "base";
}

bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
  return a.p_ == b.p_ && a.kind_ == b.kind_ && a.e_ == b.e_ && a.f_ == b.f_ && a.c_ == b.c_ &&
         a.modulus_ == b.modulus_;
}

Field make_base_field(long p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  auto F = std::make_shared<FieldDescriptor>();
  F->p_ = p;
  F->kind_ = ExtensionKind::base;
  return F;
}

Field make_eisenstein_field(long p, int e, long c) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorKind::InvalidArgument, "ramification index must be positive");
  if (c % p == 0) {
    throw Error(ErrorKind::NonUnitEisensteinConstant,
                "c = " + std::to_string(c) + " is divisible by p = " + std::to_string(p));
  }
  auto F = std::make_shared<FieldDescriptor>();
  F->p_ = p;
  F->kind_ = e == 1 && c == 1 ? ExtensionKind::base : ExtensionKind::eisenstein;
  F->e_ = e;
  F->c_ = c;
  return F;
}

Field make_unramified_field(long p, std::vector<long> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorKind::InvalidArgument, "defining polynomial must be monic of degree >= 1");
  }
  const int f = static_cast<int>(modulus.size()) - 1;
  if (f > 8) throw Error(ErrorKind::InvalidArgument, "residue degree above 8 is not supported");
  if (!irreducible_mod_p(modulus, p)) {
    throw Error(ErrorKind::ReducibleDefiningPolynomial, "defining polynomial is reducible mod p");
  }
  if (f == 1) return make_base_field(p);
  auto F = std::make_shared<FieldDescriptor>();
  F->p_ = p;
  F->kind_ = ExtensionKind::unramified;
  F->f_ = f;
  F->modulus_ = std::move(modulus);
  return F;
}

Field make_field(long p, std::string_view spec) {
  if (spec.empty() || spec == "base") return make_base_field(p);
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "eisenstein") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "expected eisenstein:<e>:<c>, got '" + std::string(spec) + "'");
    }
    const long e = parse_long(rest.substr(0, c2), "ramification index");
    const long c = parse_long(rest.substr(c2 + 1), "eisenstein constant");
    return make_eisenstein_field(p, static_cast<int>(e), c);
  }
  if (head == "unramified") {
    std::vector<long> coeffs;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto piece = rest.substr(start, comma == std::string_view::npos ? rest.size() - start
                                                                            : comma - start);
      coeffs.push_back(parse_long(piece, "defining polynomial"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return make_unramified_field(p, std::move(coeffs));
  }
  throw Error(ErrorKind::SyntaxError, "unknown extension kind '" + std::string(spec) + "'");
}

}  // namespace padic_tate
