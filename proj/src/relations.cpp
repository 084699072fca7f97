#include "padic_tate/relations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

long ram_index(const Element& x) { return x.field()->ramified_layout() ? x.field()->e() : 1; }

long count_candidates(std::size_t n, long height) {
  if (height < 0) throw Error(ErrorKind::InvalidArgument, "height must be non-negative");
  const double c = std::pow(2.0 * static_cast<double>(height) + 1.0, static_cast<double>(n));
  if (c > kMaxRelationCandidates) {
    throw Error(ErrorKind::SearchSpaceTooLarge, "(2H+1)^n = " + std::to_string(static_cast<long long>(c)) +
                                                    " candidates exceeds the exhaustive-search budget of " +
                                                    std::to_string(static_cast<long long>(kMaxRelationCandidates)));
  }
  return static_cast<long>(c);
}

long checked_target(long N, long slack) {
  if (slack < 0 || N - slack <= 0) {
    throw Error(ErrorKind::InvalidArgument, "slack " + std::to_string(slack) + " leaves no precision out of " +
                                                std::to_string(N) + " digits");
  }
  return N - slack;
}

bool proves_at_least(const Element& x, long target) { return x.is_zero() || x.shift() >= target; }

// First nonzero entry positive and gcd 1.
bool is_canonical(const std::vector<long>& m) {
  long g = 0;
  long lead = 0;
  for (long x : m) {
    g = std::gcd(g, x);
    if (lead == 0) lead = x;
  }
  return g == 1 && lead > 0;
}

double false_positive_bound(long candidates, const Element& x, long target) {
  const double digits = static_cast<double>(target) / static_cast<double>(ram_index(x));
  return std::min(1.0, static_cast<double>(candidates) *
                           std::exp(-digits * std::log(static_cast<double>(x.field()->p()))));
}

}  // namespace

RelationReport relation_search(const std::vector<Element>& z, long height, long slack) {
  if (z.empty()) throw Error(ErrorKind::InvalidArgument, "relation_search needs at least one element");
  for (const Element& x : z) require_same_field(z[0], x);
  RelationReport out;
  out.candidates = count_candidates(z.size(), height);
  long N = z[0].abs_prec();
  for (const Element& x : z) N = std::min(N, x.abs_prec());
  const long target = checked_target(N, slack);
  out.precision = target;
  out.false_positive_bound = false_positive_bound(out.candidates, z[0], target);

  const std::size_t n = z.size();
  std::vector<std::vector<Element>> multiples(n);
  for (std::size_t i = 0; i < n; ++i)
    for (long m = -height; m <= height; ++m) multiples[i].push_back(z[i].with_prec(N).mul_int(m).with_prec(N));

  std::vector<long> m(n, 0);
  // lexicographic order on m; the sign normalization fixes the first nonzero entry positive
  std::function<void(std::size_t, const Element&, bool)> walk = [&](std::size_t i, const Element& acc, bool lead) {
    if (i == n) {
      if (is_canonical(m) && proves_at_least(acc, target)) out.relations.push_back(m);
      return;
    }
    const long lo = lead ? 0 : -height;
    for (long v = lo; v <= height; ++v) {
      m[i] = v;
      walk(i + 1, acc + multiples[i][static_cast<std::size_t>(v + height)], lead && v == 0);
    }
  };
  walk(0, Element::zero(z[0].field(), N), true);
  return out;
}

RelationReport mult_dependence_mod_kernel(const Element& q, const std::vector<Element>& u, long height, long slack) {
  if (u.empty()) throw Error(ErrorKind::InvalidArgument, "mult_dependence_mod_kernel needs at least one element");
  if (q.is_zero()) throw Error(ErrorKind::ImpreciseValuation, "q has no known nonzero digit");
  if (q.shift() <= 0) throw Error(ErrorKind::NonpositiveValuation, "v(q) must be positive");
  for (const Element& x : u) {
    require_same_field(q, x);
    if (x.is_zero()) throw Error(ErrorKind::ImpreciseValuation, "u_i has no known nonzero digit");
  }
  RelationReport out;
  out.candidates = count_candidates(u.size(), height);
  long N = q.rel_prec();
  long max_shift = 0;
  for (const Element& x : u) {
    N = std::min(N, x.rel_prec());
    max_shift = std::max(max_shift, std::abs(x.shift()));
  }
  const long target = checked_target(N, slack);
  out.precision = target;
  out.false_positive_bound = false_positive_bound(out.candidates, q, target);
  const long kmax = height * max_shift / q.shift() + 1;

  const std::size_t n = u.size();
  auto unit_part = [N](const Element& x) { return x.mul_pi_power(-x.shift()).with_prec(N); };
  std::vector<std::vector<Element>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Element w = unit_part(u[i]);
    for (long m = -height; m <= height; ++m) powers[i].push_back(w.pow(m));
  }
  const Element wq_inv = unit_part(q).inverse();
  std::vector<Element> q_powers;  // wq^-k at index k + kmax
  for (long k = -kmax; k <= kmax; ++k) q_powers.push_back(wq_inv.pow(k));
  const Element one = Element::one(q.field(), N);

  std::vector<long> m(n, 0);
  std::function<void(std::size_t, const Element&, long, bool)> walk = [&](std::size_t i, const Element& acc,
                                                                           long S, bool lead) {
    if (i == n) {
      if (lead || S % q.shift() != 0) return;
      const long k = S / q.shift();
      if (std::abs(k) > kmax) return;
      std::vector<long> mk = m;
      mk.push_back(k);
      if (!is_canonical(mk)) return;
      const Element& qk = q_powers[static_cast<std::size_t>(k + kmax)];
      if (proves_at_least(acc * qk - one, target)) out.relations.push_back(std::move(mk));
      return;
    }
    const long lo = lead ? 0 : -height;
    for (long v = lo; v <= height; ++v) {
      m[i] = v;
      walk(i + 1, acc * powers[i][static_cast<std::size_t>(v + height)], S + v * u[i].shift(), lead && v == 0);
    }
  };
  walk(0, one, 0, true);
  return out;
}

}  // namespace padic_tate
