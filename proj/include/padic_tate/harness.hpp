#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic_tate/element.hpp"
#include "padic_tate/random.hpp"
#include "padic_tate/weierstrass.hpp"

namespace padic_tate {

struct RunConfig {
  long p = 5;
  long prec = 40;
  std::string ext = "base";
  std::uint64_t seed = 0;
  long slack = 10;
  /// Literal for q in the tate suite; empty means p^2.
  std::string q;
  /// Trials per randomized family; 0 keeps each suite's default.
  long trials = 0;
  /// Worker threads for trial loops. Output order never depends on it.
  int threads = 1;
  /// Digits drawn for random inputs before truncation to prec; 0 means
  /// prec. The doubled-precision check fixes it so both runs see the same
  /// inputs.
  long draw_prec = 0;
};

/// Throws InvalidArgument unless prec > slack and ext names a valid field.
void validate(const RunConfig& config);

struct Assertion {
  std::string suite;
  std::string name;
  long trial = -1;  // -1 for deterministic assertions
  bool ok = false;
  /// Measured residual valuation ("r/s", or ">=r/s" when only a bound is
  /// known); empty for discrete checks.
  std::string residual;
  long prec = 0;  // digits the assertion was required to reach
  std::string detail;
  /// Computed values compared by the doubled-precision check.
  std::vector<Element> values;
  /// Discrete outcome compared verbatim by the doubled-precision check.
  std::string outcome;
};

struct SuiteReport {
  std::string suite;
  std::vector<Assertion> assertions;
  bool ok() const;
  long failures() const;
};

/// exp, tate, weierstrass, balls, lattice, relations.
const std::vector<std::string>& suite_names();

/// Runs one invariant suite. Library errors inside a trial become failed
/// assertions carrying the error text.
SuiteReport run_suite(const std::string& suite, const RunConfig& config);

/// Reruns the suite at twice the precision on the same drawn inputs and
/// checks that every value agrees after truncation and every discrete
/// outcome is unchanged.
SuiteReport doubled_precision_check(const std::string& suite, const RunConfig& config);

/// Weierstrass division input: g, and f regular in the last variable of
/// degree d with deg(f - monic part) <= d so products stay within the cap.
struct DivisionInstance {
  StrictSeries g, f;
  int m = 0;
  int d = 0;
  int D = 0;
};
DivisionInstance random_division_instance(const Field& field, long coeff_prec, int max_vars, int max_d, int degree_cap,
                                          Rng& rng);

}  // namespace padic_tate
