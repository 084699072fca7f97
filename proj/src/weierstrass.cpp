#include "padic_tate/weierstrass.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

int degree_of(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

long ram_index(const FieldDescriptor& F) { return F.ramified_layout() ? F.e() : 1; }

bool pure_in(const Exponent& e, int idx) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (static_cast<int>(i) != idx && e[i] != 0) return false;
  }
  return true;
}

enum class Residue { unit, maximal, unknown };

// Whether a coefficient in the valuation ring is a unit.
Residue residue_kind(const Element& c) {
  if (!c.is_zero()) return c.shift() == 0 ? Residue::unit : Residue::maximal;
  return c.abs_prec() >= 1 ? Residue::maximal : Residue::unknown;
}

bool residue_is_one(const Element& c) {
  const ResidueDigit d = c.digits(1).front();
  if (d.empty() || d[0] != 1) return false;
  return std::all_of(d.begin() + 1, d.end(), [](long x) { return x == 0; });
}

}  // namespace

StrictSeries::StrictSeries(Field field, int nvars, int degree_cap, long coeff_prec)
    : field_(std::move(field)), nvars_(nvars), degree_cap_(degree_cap), coeff_prec_(coeff_prec) {
  if (nvars < 1) throw Error(ErrorKind::InvalidArgument, "a series needs at least one variable");
  if (degree_cap < 0) throw Error(ErrorKind::InvalidArgument, "negative degree cap");
}

void StrictSeries::insert(const Exponent& exp, Element c) {
  c = c.with_prec(coeff_prec_);
  if (c.is_zero() && c.abs_prec() >= coeff_prec_) {
    terms_.erase(exp);
  } else {
    terms_[exp] = std::move(c);
  }
}

void StrictSeries::add_term(const Exponent& exp, const Element& c) {
  if (static_cast<int>(exp.size()) != nvars_) {
    throw Error(ErrorKind::InvalidArgument, "exponent length does not match the number of variables");
  }
  if (std::any_of(exp.begin(), exp.end(), [](int x) { return x < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "negative exponent in a power series");
  }
  if (degree_of(exp) > degree_cap_) {
    throw Error(ErrorKind::InvalidArgument, "monomial of total degree " + std::to_string(degree_of(exp)) +
                                                " exceeds the degree cap " + std::to_string(degree_cap_));
  }
  if ((!c.is_zero() && c.shift() < 0) || (c.is_zero() && c.abs_prec() < 0)) {
    throw Error(ErrorKind::InvalidArgument, "coefficient " + c.to_string() + " is not in the valuation ring");
  }
  if (c.field() && !(*c.field() == *field_)) throw Error(ErrorKind::FieldMismatch, "coefficient field differs");
  auto it = terms_.find(exp);
  insert(exp, it == terms_.end() ? c : it->second + c);
}

StrictSeries StrictSeries::from_terms(Field field, int nvars, int degree_cap, long coeff_prec,
                                      const std::vector<std::pair<Exponent, Element>>& terms) {
  StrictSeries s(std::move(field), nvars, degree_cap, coeff_prec);
  for (const auto& [e, c] : terms) s.add_term(e, c);
  return s;
}

Element StrictSeries::coeff(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Element::zero(field_, coeff_prec_) : it->second;
}

int StrictSeries::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
  return d;
}

int StrictSeries::degree_in(int active) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(active - 1)]);
  return d;
}

void StrictSeries::check_compatible(const StrictSeries& other) const {
  if (nvars_ != other.nvars_ || degree_cap_ != other.degree_cap_) {
    throw Error(ErrorKind::InvalidArgument, "series have different shapes");
  }
  if (!(*field_ == *other.field_)) throw Error(ErrorKind::FieldMismatch, "series live over different fields");
}

StrictSeries StrictSeries::operator-() const {
  StrictSeries r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

StrictSeries operator+(const StrictSeries& a, const StrictSeries& b) {
  a.check_compatible(b);
  StrictSeries r(a.field_, a.nvars_, a.degree_cap_, std::min(a.coeff_prec_, b.coeff_prec_));
  for (const auto& [e, c] : a.terms_) r.insert(e, c);
  for (const auto& [e, c] : b.terms_) {
    auto it = r.terms_.find(e);
    r.insert(e, it == r.terms_.end() ? c : it->second + c);
  }
  return r;
}

StrictSeries operator-(const StrictSeries& a, const StrictSeries& b) { return a + (-b); }

StrictSeries operator*(const StrictSeries& a, const StrictSeries& b) {
  a.check_compatible(b);
  const long N = std::min(a.coeff_prec_, b.coeff_prec_);
  std::map<Exponent, Element> acc;
  std::map<Exponent, Element> overflow;
  Exponent e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto& target = degree_of(e) > a.degree_cap_ ? overflow : acc;
      const Element prod = (ca * cb).with_prec(N);
      auto it = target.find(e);
      if (it == target.end()) {
        target.emplace(e, prod);
      } else {
        it->second = it->second + prod;
      }
    }
  }
  for (const auto& [eo, c] : overflow) {
    if (!c.with_prec(N).is_zero()) {
      throw Error(ErrorKind::DegreeCapExceeded,
                  "product has a nonzero coefficient in total degree " + std::to_string(degree_of(eo)) +
                      " above the cap " + std::to_string(a.degree_cap_));
    }
  }
  StrictSeries r(a.field_, a.nvars_, a.degree_cap_, N);
  for (auto& [ek, c] : acc) r.insert(ek, std::move(c));
  return r;
}

StrictSeries StrictSeries::scale(const Element& c) const {
  StrictSeries r(field_, nvars_, degree_cap_, coeff_prec_);
  for (const auto& [e, x] : terms_) r.insert(e, x * c);
  return r;
}

StrictSeries StrictSeries::with_prec(long prec) const {
  StrictSeries r(field_, nvars_, degree_cap_, std::min(prec, coeff_prec_));
  for (const auto& [e, c] : terms_) r.insert(e, c);
  return r;
}

bool agree(const StrictSeries& a, const StrictSeries& b) {
  const StrictSeries d = a - b;
  return std::all_of(d.terms().begin(), d.terms().end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::string StrictSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      const int k = it->first[i];
      if (k == 0) continue;
      os << "*xi" << (i + 1);
      if (k != 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  os << " + O(pi^" << coeff_prec_ << ")";
  return os.str();
}

ValuationResult gauss_valuation(const StrictSeries& f) {
  const long e = ram_index(*f.field());
  // Unstored monomials are O(pi^coeff_prec).
  long bound = f.coeff_prec();
  std::optional<long> exact;
  for (const auto& [ex, c] : f.terms()) {
    if (c.is_zero()) {
      bound = std::min(bound, c.abs_prec());
    } else {
      exact = std::min(exact.value_or(c.shift()), c.shift());
    }
  }
  if (exact && *exact <= bound) return {ValuationResult::Tag::exact, Rational(*exact, e)};
  return {ValuationResult::Tag::at_least, Rational(bound, e)};
}

namespace {

// Throws AmbiguousAtPrecision / returns nullopt exactly as regular_degree
// documents; otherwise the split.
std::optional<RegularSplit> try_split(const StrictSeries& f, int active) {
  if (active < 1 || active > f.nvars()) {
    throw Error(ErrorKind::InvalidArgument, "active variable index out of range");
  }
  const int a = active - 1;
  if (f.coeff_prec() < 1) {
    throw Error(ErrorKind::AmbiguousAtPrecision, "coefficients carry no residue digit");
  }
  int d = -1;
  for (const auto& [e, c] : f.terms()) {
    switch (residue_kind(c)) {
      case Residue::unknown:
        throw Error(ErrorKind::AmbiguousAtPrecision, "a coefficient's residue is unknown at this precision");
      case Residue::maximal:
        break;
      case Residue::unit:
        if (!pure_in(e, a)) return std::nullopt;
        d = std::max(d, e[static_cast<std::size_t>(a)]);
        break;
    }
  }
  if (d < 0) return std::nullopt;
  Exponent lead(static_cast<std::size_t>(f.nvars()), 0);
  lead[static_cast<std::size_t>(a)] = d;
  const Element cd = f.coeff(lead);
  if (!residue_is_one(cd)) return std::nullopt;

  RegularSplit s;
  s.d = d;
  s.w = StrictSeries(f.field(), f.nvars(), f.degree_cap(), f.coeff_prec());
  s.eps = StrictSeries(f.field(), f.nvars(), f.degree_cap(), f.coeff_prec());
  const Element one = Element::one(f.field(), f.coeff_prec());
  for (const auto& [e, c] : f.terms()) {
    if (pure_in(e, a) && e[static_cast<std::size_t>(a)] <= d) {
      if (e == lead) {
        s.w.add_term(e, one);
        s.eps.add_term(e, c - one);
      } else {
        s.w.add_term(e, c);
      }
    } else {
      s.eps.add_term(e, c);
    }
  }
  s.gamma = gauss_valuation(s.eps);
  return s;
}

}  // namespace

std::optional<int> regular_degree(const StrictSeries& f, int active) {
  auto s = try_split(f, active);
  if (!s) return std::nullopt;
  return s->d;
}

RegularSplit regular_split(const StrictSeries& f, int active) {
  auto s = try_split(f, active);
  if (!s) throw Error(ErrorKind::NotRegular, "series is not regular in xi" + std::to_string(active));
  return *s;
}

std::pair<StrictSeries, StrictSeries> poly_divmod(const StrictSeries& h, const StrictSeries& w, int active,
                                                  int d) {
  const auto a = static_cast<std::size_t>(active - 1);
  std::vector<Element> wc;  // w = xi^d + sum_{i<d} wc[i] xi^i
  Exponent pure(static_cast<std::size_t>(h.nvars()), 0);
  for (int i = 0; i < d; ++i) {
    pure[a] = i;
    wc.push_back(w.coeff(pure));
  }
  StrictSeries quot(h.field(), h.nvars(), h.degree_cap(), h.coeff_prec());
  std::map<Exponent, Element> rem = h.terms();
  const long N = h.coeff_prec();
  for (int j = h.degree_in(active); j >= d; --j) {
    std::vector<std::pair<Exponent, Element>> row;
    for (auto it = rem.begin(); it != rem.end();) {
      if (it->first[a] == j) {
        row.emplace_back(it->first, it->second);
        it = rem.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& [e, c] : row) {
      Exponent qe = e;
      qe[a] = j - d;
      quot.add_term(qe, c);
      for (int i = 0; i < d; ++i) {
        if (wc[static_cast<std::size_t>(i)].is_zero()) continue;
        Exponent re = qe;
        re[a] = j - d + i;
        const Element sub = (c * wc[static_cast<std::size_t>(i)]).with_prec(N);
        auto it = rem.find(re);
        if (it == rem.end()) {
          rem.emplace(re, -sub);
        } else {
          it->second = it->second - sub;
        }
      }
    }
  }
  StrictSeries r(h.field(), h.nvars(), h.degree_cap(), N);
  for (const auto& [e, c] : rem) r.add_term(e, c);
  return {quot, r};
}

DivisionResult weierstrass_divide(const StrictSeries& g, const StrictSeries& f, int active,
                                  const std::optional<StrictSeries>& initial_q) {
  const RegularSplit split = regular_split(f, active);
  const long N = std::min(g.coeff_prec(), f.coeff_prec());
  const long e = ram_index(*f.field());
  // gamma in pi-units; residual after k steps is at least k*gamma.
  const long gamma_pi = (split.gamma.value * Rational(e)).ceil();
  const long steps = gamma_pi >= N ? 1 : (N + gamma_pi - 1) / gamma_pi;

  DivisionResult out;
  out.d = split.d;
  out.gamma = split.gamma;
  StrictSeries q = initial_q ? initial_q->with_prec(N) : StrictSeries(g.field(), g.nvars(), g.degree_cap(), N);
  StrictSeries r(g.field(), g.nvars(), g.degree_cap(), N);
  const StrictSeries gN = g.with_prec(N);
  for (int k = 1; k <= steps + 1; ++k) {
    const StrictSeries h = gN - q * split.eps;
    auto [qn, rn] = poly_divmod(h, split.w, active, split.d);
    q = qn.with_prec(N);
    r = rn.with_prec(N);
    const ValuationResult res = gauss_valuation(gN - q * f - r);
    out.history.push_back({k, res});
    if (!res.is_exact() && res.value * Rational(e) >= Rational(N)) break;
  }
  out.q = q;
  out.r = r;
  return out;
}

}  // namespace padic_tate
