#pragma once

#include <vector>

#include "padic_tate/element.hpp"

namespace padic_tate {

/// Largest number of coefficient vectors (2H+1)^n an exhaustive search visits.
inline constexpr double kMaxRelationCandidates = 3.0e6;

struct RelationReport {
  /// Primitive vectors with first nonzero entry positive; for the
  /// multiplicative search the last entry is k.
  std::vector<std::vector<long>> relations;
  long candidates = 0;
  long precision = 0;  // relations hold modulo pi^precision
  /// Union bound on the chance that a candidate passes by accident:
  /// (2H+1)^n * p^-((prec - slack)/e).
  double false_positive_bound = 0.0;
};

/// All primitive m, |m_i| <= H, with v(sum m_i z_i) >= N - slack where N is
/// the least absolute precision of the z_i. Relations hold to precision, not
/// exactly.
RelationReport relation_search(const std::vector<Element>& z, long height, long slack);

/// All primitive (m, k), |m_i| <= H, |k| <= H max|v(u_i)| / v(q) + 1, with
/// v(prod u_i^m_i q^-k - 1) >= N - slack, N the least relative precision of
/// q and the u_i.
RelationReport mult_dependence_mod_kernel(const Element& q, const std::vector<Element>& u, long height, long slack);

}  // namespace padic_tate
