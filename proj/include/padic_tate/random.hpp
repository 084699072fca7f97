#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "padic_tate/element.hpp"

namespace padic_tate {

/// Deterministic generator for one (master_seed, stream) pair. Every trial of
/// every suite gets its own stream so results do not depend on scheduling.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream);
  /// Stream derived from a label and a trial index.
  Rng(std::uint64_t master_seed, std::string_view label, std::uint64_t trial);

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Uniform residue digit (never zero when `nonzero` is set).
ResidueDigit random_digit(const FieldDescriptor& F, Rng& rng, bool nonzero);

/// pi^shift * (unit with uniformly random digits) known mod pi^abs_prec.
Element random_element_with_shift(const Field& field, long shift, long abs_prec, Rng& rng);

/// Random unit known mod pi^abs_prec.
Element random_unit(const Field& field, long abs_prec, Rng& rng);

/// Random element with shift drawn uniformly from [lo, hi].
Element random_element(const Field& field, long lo, long hi, long abs_prec, Rng& rng);

/// u with 0 <= v(u) < v(q) and v(1 - u) = 0: a generic point of the
/// fundamental domain, away from the kernel's residue class.
Element random_fundamental_point(const Element& q, long abs_prec, Rng& rng);

}  // namespace padic_tate
