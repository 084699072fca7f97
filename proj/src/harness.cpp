#include "padic_tate/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <thread>

#include "padic_tate/balls.hpp"
#include "padic_tate/errors.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/lattice.hpp"
#include "padic_tate/parse.hpp"
#include "padic_tate/relations.hpp"
#include "padic_tate/series.hpp"
#include "padic_tate/tate.hpp"

namespace padic_tate {

bool SuiteReport::ok() const { return failures() == 0; }

long SuiteReport::failures() const {
  return std::count_if(assertions.begin(), assertions.end(), [](const Assertion& a) { return !a.ok; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exp", "tate", "weierstrass", "balls", "lattice", "relations"};
  return names;
}

void validate(const RunConfig& c) {
  if (c.prec <= c.slack) {
    throw Error(ErrorKind::InvalidArgument,
                "prec " + std::to_string(c.prec) + " must exceed slack " + std::to_string(c.slack));
  }
  if (c.slack < 0) throw Error(ErrorKind::InvalidArgument, "slack must be non-negative");
  if (c.threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be at least 1");
  if (c.draw_prec != 0 && c.draw_prec < c.prec) {
    throw Error(ErrorKind::InvalidArgument, "draw precision below working precision");
  }
  make_field(c.p, c.ext);
}

namespace {

long ram_index(const Field& F) { return F->ramified_layout() ? F->e() : 1; }

long draw_prec(const RunConfig& c) { return c.draw_prec ? c.draw_prec : c.prec; }

long trials_or(const RunConfig& c, long fallback) { return c.trials > 0 ? c.trials : fallback; }

// pi-digits proven zero in d
long digits_of(const Element& d) { return d.is_zero() ? d.abs_prec() : d.shift(); }

Rational as_valuation(long digits, const Field& F) { return Rational(digits, ram_index(F)); }

// Residual assertion: d must be known to vanish to at least `target` digits.
Assertion residual_check(const std::string& suite, const std::string& name, long trial, const Element& d,
                         long target) {
  Assertion a;
  a.suite = suite;
  a.name = name;
  a.trial = trial;
  a.prec = target;
  a.residual = d.valuation().to_string();
  a.ok = digits_of(d) >= target;
  return a;
}

Assertion discrete_check(const std::string& suite, const std::string& name, long trial, bool ok,
                         std::string outcome = {}, std::string detail = {}) {
  Assertion a;
  a.suite = suite;
  a.name = name;
  a.trial = trial;
  a.ok = ok;
  a.outcome = std::move(outcome);
  a.detail = std::move(detail);
  return a;
}

Assertion error_assertion(const std::string& suite, const std::string& name, long trial, const std::exception& e) {
  return discrete_check(suite, name, trial, false, "error", e.what());
}

using TrialFn = std::function<std::vector<Assertion>(long)>;

// Runs trials on `threads` workers; results are merged in trial order.
std::vector<Assertion> run_trials(const std::string& suite, long count, int threads, const TrialFn& fn) {
  std::vector<std::vector<Assertion>> results(static_cast<std::size_t>(count));
  auto one = [&](long t) {
    try {
      results[static_cast<std::size_t>(t)] = fn(t);
    } catch (const std::exception& e) {
      results[static_cast<std::size_t>(t)] = {error_assertion(suite, "trial", t, e)};
    }
  };
  if (threads <= 1 || count <= 1) {
    for (long t = 0; t < count; ++t) one(t);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<long>(threads, count); ++w) {
      pool.emplace_back([&] {
        for (long t = next++; t < count; t = next++) one(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Assertion> out;
  for (auto& r : results)
    for (auto& a : r) out.push_back(std::move(a));
  return out;
}

// Deterministic assertions share the error handling of trials.
void guarded(std::vector<Assertion>& out, const std::string& suite, const std::string& name,
             const std::function<void(std::vector<Assertion>&)>& fn) {
  try {
    fn(out);
  } catch (const std::exception& e) {
    out.push_back(error_assertion(suite, name, -1, e));
  }
}

// ---------------------------------------------------------------- exp

std::vector<Assertion> exp_suite(const RunConfig& c) {
  const std::string S = "exp";
  const Field F = make_field(c.p, c.ext);
  const long N = c.prec;
  const long target = N - c.slack;
  const long e = ram_index(F);
  const long smin = e / (c.p - 1) + 1;  // least shift with s/e > 1/(p-1)
  return run_trials(S, trials_or(c, 100), c.threads, [&](long t) {
    Rng rng(c.seed, "exp", static_cast<std::uint64_t>(t));
    const Element x = random_element(F, smin, smin + 3, draw_prec(c), rng).with_prec(N);
    const Element y = random_element(F, smin, smin + 3, draw_prec(c), rng).with_prec(N);
    const Element one = Element::one(F, N);
    std::vector<Assertion> out;
    const Element exy = p_exp(x + y);
    out.push_back(residual_check(S, "exp(x+y)=exp(x)exp(y)", t, exy - p_exp(x) * p_exp(y), target));
    out.back().values = {exy};
    const Element lx = p_log(p_exp(x));
    out.push_back(residual_check(S, "log(exp(x))=x", t, lx - x, target));
    out.back().values = {lx};
    const Element el = p_exp(p_log(one + x));
    out.push_back(residual_check(S, "exp(log(1+x))=1+x", t, el - (one + x), target));
    out.back().values = {el};
    const Element lxy = p_log((one + x) * (one + y));
    out.push_back(residual_check(S, "log((1+x)(1+y))=log(1+x)+log(1+y)", t,
                                 lxy - p_log(one + x) - p_log(one + y), target));
    out.back().values = {lxy};
    const ValuationResult vd = (p_exp(x) - one).valuation();
    const ValuationResult vx = x.valuation();
    out.push_back(discrete_check(S, "v(exp(x)-1)=v(x)", t, vd.is_exact() && vx.is_exact() && vd.value == vx.value,
                                 vd.to_string()));
    out.back().residual = vd.to_string();
    return out;
  });
}

// ---------------------------------------------------------------- tate

Element tate_q(const RunConfig& c, const Field& F, long N) {
  return parse_element(c.q.empty() ? std::to_string(c.p) + "^2" : c.q, F, N);
}

std::vector<Assertion> tate_suite(const RunConfig& c) {
  const std::string S = "tate";
  const Field F = make_field(c.p, c.ext);
  const long N = c.prec;
  const long target = N - c.slack;
  const TateCurve C = curve_coefficients(tate_q(c, F, N), c.slack);
  const Rational vq = C.q.valuation().value;
  std::vector<Assertion> out;

  guarded(out, S, "j", [&](std::vector<Assertion>& o) {
    const Element j = j_invariant(C);
    const ValuationResult vj = j.valuation();
    o.push_back(discrete_check(S, "v(j)=-v(q)", -1, vj.is_exact() && vj.value == -vq, vj.to_string()));
    o.back().residual = vj.to_string();
    o.back().values = {j};
    const Element rest = j - C.q.inverse() - Element::from_integer(F, 744, N);
    Assertion a = discrete_check(S, "v(j-1/q-744)>=v(q)", -1, rest.valuation().value >= vq);
    a.residual = rest.valuation().to_string();
    o.push_back(a);
  });
  for (long n = -2; n <= 2; ++n) {
    guarded(out, S, "kernel", [&](std::vector<Assertion>& o) {
      const bool id = phi(C, C.q.pow(n)).is_identity();
      o.push_back(discrete_check(S, "phi(q^" + std::to_string(n) + ")=O", -1, id, id ? "identity" : "affine"));
    });
  }

  auto trials = run_trials(S, trials_or(c, 20), c.threads, [&](long t) {
    Rng rng(c.seed, "tate", static_cast<std::uint64_t>(t));
    const Element u1 = random_fundamental_point(C.q, draw_prec(c), rng).with_prec(N);
    const Element u2 = random_fundamental_point(C.q, draw_prec(c), rng).with_prec(N);
    std::vector<Assertion> o;
    const TatePoint P = phi(C, u1);
    const HomomorphismCheck h = verify_homomorphism(C.q, u1, u2, N, target, c.slack);
    Assertion hom = discrete_check(S, "phi(u1u2)=phi(u1)+phi(u2)", t, h.ok);
    hom.prec = target;
    hom.residual = h.both_identity ? "inf"
                   : h.residual_digits < 0 ? "-inf"
                                            : as_valuation(h.residual_digits, F).to_string();
    if (h.working_prec > N) hom.detail = "working precision " + std::to_string(h.working_prec);
    o.push_back(hom);

    o.push_back(residual_check(S, "on-curve", t, curve_residual(C, P), target));
    o.back().values = {P.x, P.y};
    const ValuationResult ode = verify_ode(C, u1);
    Assertion a = discrete_check(S, "(uX')^2=4X^3+X^2+4a4X+4a6", t, ode.value >= as_valuation(target, F));
    a.residual = ode.to_string();
    a.prec = target;
    o.push_back(a);
    const ValuationResult rel = verify_derivative_relation(C, u1);
    Assertion b = discrete_check(S, "uX'=X+2Y", t, rel.value >= as_valuation(target, F));
    b.residual = rel.to_string();
    b.prec = target;
    o.push_back(b);
    return o;
  });
  for (auto& a : trials) out.push_back(std::move(a));
  return out;
}

// Monomials of total degree <= D in m variables, lexicographic.
std::vector<Exponent> monomials(int m, int D) {
  std::vector<Exponent> out;
  Exponent cur(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, D);
  return out;
}

// ---------------------------------------------------------------- weierstrass

std::vector<Assertion> weierstrass_suite(const RunConfig& c) {
  const std::string S = "weierstrass";
  const Field F = make_field(c.p, c.ext);
  const long N = c.prec / 2;
  const long draw = draw_prec(c) / 2;
  return run_trials(S, trials_or(c, 50), c.threads, [&](long t) {
    Rng rng(c.seed, "weierstrass", static_cast<std::uint64_t>(t));
    DivisionInstance in = random_division_instance(F, draw, 3, 3, 8, rng);
    in.g = in.g.with_prec(N);
    in.f = in.f.with_prec(N);
    std::vector<Assertion> o;
    const DivisionResult res = weierstrass_divide(in.g, in.f, in.m);
    const StrictSeries resid = in.g - res.q * in.f - res.r;
    long worst = N;
    for (const auto& [exp, coeff] : resid.terms()) worst = std::min(worst, digits_of(coeff));
    Assertion rec = discrete_check(S, "g=qf+r", t, worst >= N);
    rec.prec = N;
    rec.residual = ">=" + as_valuation(worst, F).to_string();
    for (const Exponent& mono : monomials(in.m, in.D)) {
      rec.values.push_back(res.q.coeff(mono));
      rec.values.push_back(res.r.coeff(mono));
    }
    o.push_back(rec);
    const int rd = res.r.degree_in(in.m);
    o.push_back(discrete_check(S, "deg r <= d-1", t, rd <= in.d - 1, std::to_string(rd)));
    const RegularSplit sp = regular_split(in.f, in.m);
    const auto start = poly_divmod(in.g, sp.w, in.m, sp.d).first;
    const DivisionResult res2 = weierstrass_divide(in.g, in.f, in.m, start);
    o.push_back(discrete_check(S, "unique (two starts)", t, agree(res.q, res2.q) && agree(res.r, res2.r)));
    return o;
  });
}

// ---------------------------------------------------------------- balls

long int_valuation(long n, long p) {
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long int_mod(long n, long m) { return ((n % m) + m) % m; }

// Exhaustive check on the grid {sum_{i<k} d_i p^i} in Q_p (k = 6 for p <= 5).
std::vector<Assertion> balls_grid(const RunConfig& c) {
  const std::string S = "balls";
  const Field F = make_base_field(c.p);
  long digits = 0, G = 1;
  while (digits < 6 && G * c.p <= 20000) {
    G *= c.p;
    ++digits;
  }
  const long N = digits + 6;
  std::vector<Element> grid;
  for (long n = 0; n < G; ++n) grid.push_back(Element::from_integer(F, n, N));
  const long p = c.p;
  const std::vector<std::vector<long>> Cs{{0}, {1}, {0, 1}, {0, p * p}, {p - 1, p * p * p + 1}};
  std::vector<Assertion> out;
  for (const auto& Cint : Cs) {
    std::vector<Element> C;
    for (long x : Cint) C.push_back(Element::from_integer(F, x, N));
    for (long lam : {0L, 1L}) {
      const std::string name = "grid C={" +
                               std::accumulate(Cint.begin() + 1, Cint.end(), std::to_string(Cint[0]),
                                               [](std::string a, long b) { return a + "," + std::to_string(b); }) +
                               "} lambda=" + std::to_string(lam);
      guarded(out, S, name, [&](std::vector<Assertion>& o) {
        // integer oracle: radius max_c v(n - c) + lambda, class n mod p^(radius + 1)
        std::vector<std::string> key(static_cast<std::size_t>(G));
        std::map<std::string, std::string> lib_to_oracle, oracle_to_lib;
        bool partition = true;
        long classes = 0;
        for (long n = 0; n < G; ++n) {
          if (std::find(Cint.begin(), Cint.end(), n) != Cint.end()) continue;
          long r = -1;
          for (long x : Cint) r = std::max(r, n == x ? N : int_valuation(n - x, p));
          r += lam;
          long pk = 1;
          for (long i = 0; i <= r && pk <= G; ++i) pk *= p;
          auto& k = key[static_cast<std::size_t>(n)];
          k = std::to_string(r) + ":" + std::to_string(int_mod(n, pk));
          const Ball b = ball_next(C, Rational(lam), grid[static_cast<std::size_t>(n)]);
          partition = partition && b.radius == Rational(r);
          const std::string lk = b.canonical_key();
          const auto [i1, new1] = lib_to_oracle.emplace(lk, k);
          const auto [i2, new2] = oracle_to_lib.emplace(k, lk);
          classes += new1;
          partition = partition && i1->second == k && i2->second == lk;
        }
        o.push_back(discrete_check(S, name + " ball_next partition", -1, partition, std::to_string(classes)));
        Rng rng(c.seed, "balls-grid", static_cast<std::uint64_t>(lam * 1000 + Cint.front() * 10 + Cint.size()));
        bool same_ok = true;
        long pairs = 0;
        for (long n = 0; n < G; ++n) {
          const auto& kn = key[static_cast<std::size_t>(n)];
          if (kn.empty()) continue;
          for (int s = 0; s < 5; ++s) {
            long m = rng.uniform(0, G - 1);
            if (s == 0) {
              // partner in the same class when one exists in the grid
              const long r = std::stol(kn);
              long pk = 1;
              for (long i = 0; i <= r && pk < G; ++i) pk *= p;
              m = (n + pk) % G;
            }
            const auto& km = key[static_cast<std::size_t>(m)];
            if (km.empty()) continue;
            ++pairs;
            same_ok = same_ok && same_ball(C, Rational(lam), grid[static_cast<std::size_t>(n)],
                                           grid[static_cast<std::size_t>(m)]) == (kn == km);
          }
        }
        o.push_back(discrete_check(S, name + " same_ball", -1, same_ok, std::to_string(pairs)));
      });
    }
  }
  return out;
}

std::vector<Assertion> balls_suite(const RunConfig& c) {
  const std::string S = "balls";
  const Field F = make_field(c.p, c.ext);
  const long N = c.prec;
  const long e = ram_index(F);
  auto out = run_trials(S, trials_or(c, 500), c.threads, [&](long t) {
    Rng rng(c.seed, "balls", static_cast<std::uint64_t>(t));
    const long D = draw_prec(c);
    std::vector<Element> C;
    const long nC = rng.uniform(1, 4);
    for (long i = 0; i < nC; ++i) C.push_back(random_element(F, 0, 3, D, rng).with_prec(N));
    const Rational lambda(rng.uniform(0, 3 * e), e);
    Element x, y, z;
    for (;;) {
      x = random_element(F, 0, 3, D, rng).with_prec(N);
      y = (x + random_element(F, 0, 8, D, rng)).with_prec(N);
      z = (y + random_element(F, 0, 8, D, rng)).with_prec(N);
      bool clear = true;
      for (const auto& cc : C)
        for (const Element* w : {&x, &y, &z}) clear = clear && !(*w - cc).is_zero() && (*w - cc).shift() < N / 2;
      if (clear) break;
    }
    std::vector<Assertion> o;
    const bool sxy = same_ball(C, lambda, x, y);
    const Ball bx = ball_next(C, lambda, x);
    const Ball by = ball_next(C, lambda, y);
    o.push_back(discrete_check(S, "same_ball <=> equal balls", t, sxy == (bx == by),
                               std::string(sxy ? "same" : "different") + " r=" + bx.radius.to_string()));
    o.push_back(discrete_check(S, "reflexive", t, same_ball(C, lambda, x, x)));
    o.push_back(discrete_check(S, "symmetric", t, sxy == same_ball(C, lambda, y, x)));
    const bool syz = same_ball(C, lambda, y, z);
    const bool sxz = same_ball(C, lambda, x, z);
    o.push_back(discrete_check(S, "transitive", t, !(sxy && syz) || sxz));
    const bool wider = same_ball(C, lambda + Rational(1), x, y);
    o.push_back(discrete_check(S, "monotone in lambda", t, !wider || sxy));
    return o;
  });
  for (auto& a : balls_grid(c)) out.push_back(std::move(a));
  return out;
}

// ---------------------------------------------------------------- lattice

// Rank by rational row reduction, independent of the Smith reduction.
long rational_rank(const IntMatrix& M) {
  std::vector<std::vector<mpq_class>> A(static_cast<std::size_t>(M.rows()));
  for (long i = 0; i < M.rows(); ++i)
    for (long j = 0; j < M.cols(); ++j) A[static_cast<std::size_t>(i)].push_back(mpq_class(M(i, j)));
  long r = 0;
  for (long col = 0; col < M.cols() && r < M.rows(); ++col) {
    long piv = r;
    while (piv < M.rows() && A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
    if (piv == M.rows()) continue;
    std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(r)]);
    const auto& R = A[static_cast<std::size_t>(r)];
    for (long i = r + 1; i < M.rows(); ++i) {
      auto& row = A[static_cast<std::size_t>(i)];
      const mpq_class f = row[static_cast<std::size_t>(col)] / R[static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (long j = col; j < M.cols(); ++j) row[static_cast<std::size_t>(j)] -= f * R[static_cast<std::size_t>(j)];
    }
    ++r;
  }
  return r;
}

IntMatrix random_int_matrix(Rng& rng, long rows, long cols, long bound) {
  IntMatrix M(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) M(i, j) = rng.uniform(-bound, bound);
  return M;
}

SubgroupLattice random_subgroup(Rng& rng, long n) {
  return {n, random_int_matrix(rng, n, rng.uniform(0, n), 3), random_int_matrix(rng, n, rng.uniform(0, n), 3)};
}

std::vector<Assertion> lattice_examples() {
  const std::string S = "lattice";
  std::vector<Assertion> o;
  auto ex = [&](const std::string& name, bool ok, std::string outcome = {}) {
    o.push_back(discrete_check(S, name, -1, ok, std::move(outcome)));
  };
  guarded(o, S, "examples", [&](std::vector<Assertion>&) {
    const SmithForm I = smith_normal_form(IntMatrix::identity(3));
    ex("smith(I)=(I,I,I)", I.D == IntMatrix::identity(3) && I.U == IntMatrix::identity(3) &&
                               I.V == IntMatrix::identity(3));
    const SmithForm A = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
    ex("smith([[2,4],[6,8]]) D=diag(2,4)", A.D == IntMatrix::diagonal({2, 4}), A.D.to_string());
    ex("smith(0) rank 0", smith_normal_form(IntMatrix(2, 2)).rank == 0);
    const IntMatrix k1 = kernel_lattice(IntMatrix::from_rows({{1, 1}}));
    ex("kernel([1,1])=span(1,-1)", k1 == IntMatrix::from_rows({{1}, {-1}}), k1.to_string());
    ex("kernel(I)=0", kernel_lattice(IntMatrix::identity(3)).cols() == 0);
    const IntMatrix k2 = kernel_lattice(IntMatrix::from_rows({{2, 4}}));
    ex("kernel([2,4])=span(2,-1)", k2 == IntMatrix::from_rows({{2}, {-1}}), k2.to_string());

    const SubgroupLattice full2 = SubgroupLattice::full(2);
    const SubgroupLattice torus{2, IntMatrix::identity(2), IntMatrix(2, 0)};
    ex("dim_image(I,T)=dim T", dim_image(IntMatrix::identity(2), full2) == 4);
    ex("dim_image(0,T)=0", dim_image(IntMatrix(2, 2), full2) == 0);
    ex("dim_image(diag(1,0), G_m^2)=1", dim_image(IntMatrix::diagonal({1, 0}), torus) == 1);

    ex("rotund(G_m x E)", !rotund_check(SubgroupLattice::full(1), 5).refuted);
    const SubgroupLattice line{2, IntMatrix::from_rows({{1}, {0}}), IntMatrix::from_rows({{1}, {0}})};
    const RotundVerdict rv = rotund_check(line, 1);
    ex("not rotund({(x,1)}x{(y,0)})",
       rv.refuted && rv.witness && dim_image(*rv.witness, line) < rational_rank(*rv.witness),
       rv.witness ? rv.witness->to_string() : "");
    ex("rotund({1} x E)", !rotund_check({1, IntMatrix(1, 0), IntMatrix::identity(1)}, 5).refuted);

    const VMBound vac = lemma_VM_bound(SubgroupLattice::full(3), IntMatrix(3, 3));
    ex("V_M bound, M=0: bound = dim V", vac.r == 3 && vac.bound == 6);
    const VMBound vm = lemma_VM_bound(full2, IntMatrix::diagonal({1, 0}));
    ex("V_M bound, full V, M=diag(1,0): r=1, bound=3, intersection 2",
       vm.r == 1 && vm.bound == 3 && vm.intersection_dim == 2 && vm.intersection_dim <= vm.bound,
       std::to_string(vm.intersection_dim));

    const SubgroupLattice diag{2, IntMatrix(2, 0), IntMatrix::from_rows({{1}, {1}})};
    ex("persistently likely (diagonal, T=0)",
       persistently_likely(diag, diag, {SubgroupLattice::trivial(2)}).persistently_likely);
    const SubgroupLattice e1{2, IntMatrix(2, 0), IntMatrix::from_rows({{1}, {0}})};
    const LikelyVerdict lv = persistently_likely(e1, e1, {e1});
    ex("not persistently likely (e1, T=e1)", !lv.persistently_likely && lv.checks[0].dim_psi_V == 0);

    ex("atypical(1,1,1,3)", atypical(1, 1, 1, 3));
    ex("not atypical(0,1,2,3)", !atypical(0, 1, 2, 3));
    ex("not atypical(2,2,2,2)", !atypical(2, 2, 2, 2));
  });
  return o;
}

std::vector<Assertion> lattice_suite(const RunConfig& c) {
  const std::string S = "lattice";
  std::vector<Assertion> out = lattice_examples();
  auto mats = run_trials(S, trials_or(c, 200), c.threads, [&](long t) {
    Rng rng(c.seed, "lattice", static_cast<std::uint64_t>(t));
    const long r = rng.uniform(1, 8);
    const long k = rng.uniform(1, 8);
    IntMatrix M;
    if (rng.coin()) {
      M = random_int_matrix(rng, r, k, 1000000);
    } else {
      const long mid = rng.uniform(0, std::min(r, k));
      M = random_int_matrix(rng, r, mid, 300) * random_int_matrix(rng, mid, k, 300);
    }
    const SmithForm F = smith_normal_form(M);
    bool chain = true;
    for (std::size_t i = 0; i + 1 < F.invariants.size(); ++i)
      chain = chain && mpz_divisible_p(F.invariants[i + 1].get_mpz_t(), F.invariants[i].get_mpz_t()) != 0;
    bool diagonal = true;
    for (long i = 0; i < F.D.rows(); ++i)
      for (long j = 0; j < F.D.cols(); ++j) diagonal = diagonal && (i == j || F.D(i, j) == 0);
    std::vector<Assertion> o;
    const bool identity = F.U * M * F.V == F.D && abs(determinant(F.U)) == 1 && abs(determinant(F.V)) == 1;
    o.push_back(discrete_check(S, "UMV=D unimodular, divisibility chain", t, identity && chain && diagonal,
                               F.D.to_string()));
    const long rr = rational_rank(M);
    o.push_back(discrete_check(S, "Smith rank = rational rank", t, rr == F.rank, std::to_string(rr)));
    const IntMatrix K = kernel_lattice(M);
    o.push_back(discrete_check(S, "kernel basis", t,
                               (M * K).is_zero() && K.cols() == M.cols() - rr && rational_rank(K) == K.cols()));
    return o;
  });
  for (auto& a : mats) out.push_back(std::move(a));
  auto geo = run_trials(S, 40, c.threads, [&](long t) {
    Rng rng(c.seed, "lattice-geom", static_cast<std::uint64_t>(t));
    const long n = rng.uniform(1, 3);
    const SubgroupLattice V = random_subgroup(rng, n);
    std::vector<Assertion> o;
    const RotundVerdict v = rotund_check(V, n == 3 ? 1 : 2);
    bool sound = true;
    if (v.refuted) {
      const IntMatrix& W = *v.witness;
      sound = rational_rank(W * V.mult) + rational_rank(W * V.ell) < rational_rank(W);
    }
    o.push_back(discrete_check(S, "rotund_check witness re-verifies", t, sound,
                               v.refuted ? v.witness->to_string() : "verified"));
    const long k = rng.uniform(0, n - 1);
    const IntMatrix M = random_int_matrix(rng, n, k, 3) * random_int_matrix(rng, k, n, 3);
    const VMBound b = lemma_VM_bound(V, M);
    o.push_back(discrete_check(S, "dim V = dim MV + dim(V cap T)", t, V.dim() == b.dim_MV + b.intersection_dim,
                               std::to_string(b.intersection_dim)));
    o.push_back(discrete_check(S, "V_M bound when dim MV >= rk M", t, !b.rotund_for_M || b.intersection_dim <= b.bound));
    const long d = dim_image(M, V);
    o.push_back(discrete_check(S, "dim_image <= min(2 rk M, dim T)", t,
                               d <= std::min(2 * rational_rank(M), V.dim())));
    return o;
  });
  for (auto& a : geo) out.push_back(std::move(a));
  return out;
}

// ---------------------------------------------------------------- relations

std::string vec_string(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string relations_string(const RelationReport& r) {
  std::string s;
  for (const auto& v : r.relations) s += vec_string(v);
  return s.empty() ? "none" : s;
}

std::vector<Assertion> relations_suite(const RunConfig& c) {
  const std::string S = "relations";
  const Field F = make_field(c.p, c.ext);
  const long N = c.prec;
  return run_trials(S, trials_or(c, 10), c.threads, [&](long t) {
    Rng rng(c.seed, "relations", static_cast<std::uint64_t>(t));
    const long D = draw_prec(c);
    std::vector<Assertion> o;

    const Element a = random_element(F, 0, 2, D, rng).with_prec(N);
    const Element b = random_element(F, 0, 2, D, rng).with_prec(N);
    const long m1 = rng.uniform(1, 10), m2 = rng.uniform(-10, 10);
    const Element z3 = -(a.mul_int(m1) + b.mul_int(m2));
    const RelationReport add = relation_search({a, b, z3}, 10, c.slack);
    const std::vector<long> planted{m1, m2, 1};
    o.push_back(discrete_check(S, "planted linear relation found", t,
                               std::find(add.relations.begin(), add.relations.end(), planted) != add.relations.end(),
                               relations_string(add), "planted " + vec_string(planted)));

    const Element q = Element::uniformizer_power(F, 2, D).with_prec(N) * random_unit(F, D, rng).with_prec(N);
    const Element w1 = random_unit(F, D, rng).with_prec(N);
    const Element w2 = random_unit(F, D, rng).with_prec(N);
    const long ea = rng.uniform(-3, 3), eb = rng.uniform(-3, 3), k = rng.uniform(0, 2);
    const Element w3 = w1.pow(ea) * w2.pow(eb) * q.pow(k);
    // w1^ea w2^eb w3^-1 q^k = 1, i.e. (m, k') = (ea, eb, -1, -k) up to sign
    std::vector<long> mk{ea, eb, -1, -k};
    const long lead = ea ? ea : (eb ? eb : -1);
    if (lead < 0)
      for (long& x : mk) x = -x;
    const RelationReport mul = mult_dependence_mod_kernel(q, {w1, w2, w3}, 3, c.slack);
    o.push_back(discrete_check(S, "planted multiplicative relation found", t,
                               std::find(mul.relations.begin(), mul.relations.end(), mk) != mul.relations.end(),
                               relations_string(mul), "planted " + vec_string(mk)));

    const RelationReport none = relation_search(
        {random_unit(F, D, rng).with_prec(N), random_unit(F, D, rng).with_prec(N), random_unit(F, D, rng).with_prec(N)},
        10, c.slack);
    o.push_back(discrete_check(S, "random inputs: no linear relation", t, none.relations.empty(),
                               relations_string(none),
                               "false-positive bound " + std::to_string(none.false_positive_bound)));
    const RelationReport mnone = mult_dependence_mod_kernel(
        q, {random_unit(F, D, rng).with_prec(N), random_unit(F, D, rng).with_prec(N)}, 5, c.slack);
    o.push_back(discrete_check(S, "random units: no multiplicative relation", t, mnone.relations.empty(),
                               relations_string(mnone),
                               "false-positive bound " + std::to_string(mnone.false_positive_bound)));
    return o;
  });
}

}  // namespace

DivisionInstance random_division_instance(const Field& F, long N, int max_vars, int max_d, int degree_cap, Rng& rng) {
  DivisionInstance in;
  in.m = static_cast<int>(rng.uniform(1, max_vars));
  in.d = static_cast<int>(rng.uniform(1, max_d));
  in.D = degree_cap;
  in.g = StrictSeries(F, in.m, in.D, N);
  in.f = StrictSeries(F, in.m, in.D, N);
  auto draw = [&](bool unit) {
    if (rng.uniform(0, 4) == 0) return Element::zero(F, N);
    return unit ? random_element(F, 0, 2, N, rng) : random_element(F, 1, 4, N, rng);
  };
  const auto last = static_cast<std::size_t>(in.m - 1);
  for (const Exponent& mono : monomials(in.m, in.D)) {
    const int deg = std::accumulate(mono.begin(), mono.end(), 0);
    in.g.add_term(mono, draw(true));
    const bool pure = deg == mono[last];
    if (pure && mono[last] == in.d) {
      in.f.add_term(mono, Element::one(F, N));
    } else if (deg <= in.d) {
      in.f.add_term(mono, draw(pure));
    }
  }
  return in;
}

SuiteReport run_suite(const std::string& suite, const RunConfig& config) {
  validate(config);
  SuiteReport r;
  r.suite = suite;
  if (suite == "exp") {
    r.assertions = exp_suite(config);
  } else if (suite == "tate") {
    r.assertions = tate_suite(config);
  } else if (suite == "weierstrass") {
    r.assertions = weierstrass_suite(config);
  } else if (suite == "balls") {
    r.assertions = balls_suite(config);
  } else if (suite == "lattice") {
    r.assertions = lattice_suite(config);
  } else if (suite == "relations") {
    r.assertions = relations_suite(config);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  }
  return r;
}

SuiteReport doubled_precision_check(const std::string& suite, const RunConfig& config) {
  RunConfig lo = config;
  lo.draw_prec = 2 * config.prec;
  RunConfig hi = lo;
  hi.prec = 2 * config.prec;
  const SuiteReport a = run_suite(suite, lo);
  const SuiteReport b = run_suite(suite, hi);
  SuiteReport out;
  out.suite = suite;
  if (a.assertions.size() != b.assertions.size()) {
    out.assertions.push_back(discrete_check(suite, "doubled precision: same assertion list", -1, false,
                                            std::to_string(a.assertions.size()) + " vs " +
                                                std::to_string(b.assertions.size())));
    return out;
  }
  for (std::size_t i = 0; i < a.assertions.size(); ++i) {
    const Assertion& x = a.assertions[i];
    const Assertion& y = b.assertions[i];
    bool ok = x.ok && y.ok && x.name == y.name && x.outcome == y.outcome && x.values.size() == y.values.size();
    for (std::size_t k = 0; ok && k < x.values.size(); ++k) ok = agree(x.values[k], y.values[k]);
    Assertion d = discrete_check(suite, "doubled precision: " + x.name, x.trial, ok, x.outcome);
    if (!ok) d.detail = "prec " + std::to_string(lo.prec) + " vs " + std::to_string(hi.prec) + ": " + x.detail + y.detail;
    out.assertions.push_back(std::move(d));
  }
  return out;
}

}  // namespace padic_tate
