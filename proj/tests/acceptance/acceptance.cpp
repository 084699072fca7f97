// Acceptance criteria 1-9: one PASS/FAIL line each with the measured runtime.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles/division_instances.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/harness.hpp"
#include "padic_tate/tate.hpp"
#include "padic_tate/weierstrass.hpp"

using namespace padic_tate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

long count_named(const SuiteReport& r, const std::string& name) {
  long n = 0;
  for (const auto& a : r.assertions) n += a.name == name;
  return n;
}

std::string first_failure(const SuiteReport& r) {
  for (const auto& a : r.assertions)
    if (!a.ok) {
      return a.suite + " " + a.name + (a.trial >= 0 ? " [" + std::to_string(a.trial) + "]" : "") +
             (a.detail.empty() ? "" : ": " + a.detail);
    }
  return "";
}

void require_suite(Verdict& v, const SuiteReport& r) { v.require(r.ok(), first_failure(r)); }

RunConfig config(long p, long prec, const std::string& ext = "base", const std::string& q = "") {
  RunConfig c;
  c.p = p;
  c.prec = prec;
  c.ext = ext;
  c.q = q;
  return c;
}

SuiteReport timed_suite(const std::string& suite, const RunConfig& c, double& elapsed) {
  const auto t0 = Clock::now();
  SuiteReport r = run_suite(suite, c);
  elapsed += seconds_since(t0);
  return r;
}

Verdict criterion1(double& t) {
  Verdict v;
  const auto t0 = Clock::now();
  for (const auto& [p, q] : std::vector<std::pair<long, long>>{{2, 4}, {3, 9}, {5, 5}, {5, 25}, {7, 7}}) {
    const Field F = make_base_field(p);
    const long N = 40;
    const std::string tag = "(" + std::to_string(p) + ", " + std::to_string(q) + ")";
    const TateCurve C = curve_coefficients(Element::from_integer(F, q, N), 10);
    const Element j = j_invariant(C);
    const Rational vq = C.q.valuation().value;
    const ValuationResult vj = j.valuation();
    v.require(vj.is_exact() && vj.value == -vq, tag + " v(j) = " + vj.to_string());
    const Element rest = j - C.q.inverse() - Element::from_integer(F, 744, N);
    v.require(rest.valuation().value >= vq, tag + " v(j - 1/q - 744) = " + rest.valuation().to_string());
  }
  t = seconds_since(t0);
  return v;
}

Verdict criterion2(double& t) {
  Verdict v;
  const SuiteReport r = timed_suite("tate", config(5, 40, "base", "25"), t);
  const std::string hom = "phi(u1u2)=phi(u1)+phi(u2)";
  v.require(count_named(r, hom) == 20, "expected 20 homomorphism pairs");
  for (const auto& a : r.assertions) {
    if (a.name == hom || a.name.rfind("phi(q^", 0) == 0) v.require(a.ok, a.name + " " + a.detail);
    if (a.name == hom) v.require(a.prec == 30, "homomorphism target is not 30");
  }
  v.require(count_named(r, "phi(q^-2)=O") == 1 && count_named(r, "phi(q^2)=O") == 1, "kernel checks missing");
  return v;
}

Verdict criterion3(double& t) {
  Verdict v;
  for (const auto& [p, q] : std::vector<std::pair<long, std::string>>{{5, "25"}, {3, "9"}}) {
    const SuiteReport r = timed_suite("tate", config(p, 40, "base", q), t);
    for (const std::string name : {"(uX')^2=4X^3+X^2+4a4X+4a6", "uX'=X+2Y"}) {
      v.require(count_named(r, name) == 20, "expected 20 points for " + name);
      for (const auto& a : r.assertions)
        if (a.name == name) v.require(a.ok, "p=" + std::to_string(p) + " " + name + " residual " + a.residual);
    }
  }
  return v;
}

Verdict criterion4(double& t) {
  Verdict v;
  for (long p : {2L, 3L, 5L}) {
    const SuiteReport r = timed_suite("exp", config(p, 40, "eisenstein:2:1"), t);
    require_suite(v, r);
    v.require(count_named(r, "exp(x+y)=exp(x)exp(y)") == 100, "expected 100 pairs");
    v.require(count_named(r, "v(exp(x)-1)=v(x)") == 100, "expected 100 valuation checks");
  }
  return v;
}

Verdict criterion5(double& t) {
  Verdict v;
  const SuiteReport r = timed_suite("weierstrass", config(5, 40), t);
  require_suite(v, r);
  v.require(count_named(r, "g=qf+r") == 50, "expected 50 instances");
  for (const auto& a : r.assertions)
    if (a.name == "g=qf+r") v.require(a.prec == 20, "reconstruction target is not 20");
  const auto t0 = Clock::now();
  const Field Q5 = make_base_field(5);
  for (std::uint64_t k = 0; k < 5; ++k) {
    Rng rng(0, "acceptance-wdiv-oracle", k);
    const oracle::Instance in = oracle::random_instance(Q5, 20, rng, true, 8);
    const DivisionResult res = weierstrass_divide(in.g, in.f, in.m);
    const auto exact = oracle::divide(oracle::exact_of(in.gT), oracle::exact_of(in.fT), in.m, in.m, in.d, in.D);
    v.require(exact.has_value(), "oracle system singular");
    if (exact) {
      v.require(oracle::matches_exact(res.q, exact->q) && oracle::matches_exact(res.r, exact->r),
                "oracle mismatch on instance " + std::to_string(k));
    }
  }
  t += seconds_since(t0);
  return v;
}

Verdict criterion6(double& t) {
  Verdict v;
  const SuiteReport r = timed_suite("balls", config(5, 40), t);
  require_suite(v, r);
  v.require(count_named(r, "same_ball <=> equal balls") == 500, "expected 500 instances");
  bool grid = false;
  for (const auto& a : r.assertions) grid = grid || a.name.find("ball_next partition") != std::string::npos;
  v.require(grid, "grid checks missing");
  return v;
}

Verdict criterion7(double& t) {
  Verdict v;
  const SuiteReport r = timed_suite("lattice", config(5, 40), t);
  require_suite(v, r);
  v.require(count_named(r, "Smith rank = rational rank") == 200, "expected 200 matrices");
  return v;
}

Verdict criterion8(double& t) {
  Verdict v;
  const SuiteReport r = timed_suite("relations", config(5, 60), t);
  require_suite(v, r);
  v.require(count_named(r, "planted linear relation found") > 0, "no planted relations");
  return v;
}

std::string records(const RunConfig& c) {
  std::string out;
  for (const auto& s : suite_names())
    for (const auto& a : run_suite(s, c).assertions) out += cli::assertion_record(a) + "\n";
  return out;
}

Verdict criterion9(double& t) {
  Verdict v;
  RunConfig one = config(5, 40);
  const auto t0 = Clock::now();
  const std::string single = records(one);
  const double harness_time = seconds_since(t0);
  v.require(harness_time < 120.0, "full single-thread harness took " + std::to_string(harness_time) + " s");
  for (const auto& s : suite_names()) {
    const SuiteReport r = doubled_precision_check(s, one);
    require_suite(v, r);
  }
  RunConfig four = one;
  four.threads = 4;
  v.require(records(four) == single, "records differ between 1 and 4 threads");
  t = seconds_since(t0);
  if (v.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "single-thread harness %.2f s < 120 s", harness_time);
    v.note = buf;
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double limit;
    std::function<Verdict(double&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "j-invariant valuation", 5, criterion1},
      {2, "uniformization homomorphism", 30, criterion2},
      {3, "differential identities", 30, criterion3},
      {4, "exponential laws", 20, criterion4},
      {5, "Weierstrass division", 30, criterion5},
      {6, "ball calculus", 10, criterion6},
      {7, "lattice calculus", 10, criterion7},
      {8, "relation prober", 20, criterion8},
      {9, "precision soundness and determinism", 0, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    double t = 0;
    Verdict v;
    try {
      v = c.run(t);
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("exception: ") + e.what();
    }
    const bool in_time = c.limit == 0 || t < c.limit;
    if (!in_time && v.ok) v.note = "over the time limit";
    const bool pass = v.ok && in_time;
    failures += !pass;
    char timing[64];
    if (c.limit > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s < %.0f s", t, c.limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", t);
    }
    std::cout << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << timing << ")"
              << (v.note.empty() ? "" : ": " + v.note) << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
