#include "padic_tate/random.hpp"

#include <algorithm>

namespace padic_tate {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

Rng::Rng(std::uint64_t master_seed, std::string_view label, std::uint64_t trial)
    : Rng(master_seed, fnv1a(label) ^ (trial * 0x9E3779B97F4A7C15ULL)) {}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

ResidueDigit random_digit(const FieldDescriptor& F, Rng& rng, bool nonzero) {
  const std::size_t width = F.ramified_layout() ? 1 : static_cast<std::size_t>(F.f());
  ResidueDigit d(width, 0);
  for (;;) {
    bool any = false;
    for (auto& x : d) {
      x = rng.uniform(0, F.p() - 1);
      any = any || x != 0;
    }
    if (any || !nonzero) return d;
  }
}

Element random_element_with_shift(const Field& field, long shift, long abs_prec, Rng& rng) {
  const long count = abs_prec - shift;
  if (count <= 0) return Element::zero(field, abs_prec);
  std::vector<ResidueDigit> digits;
  digits.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) digits.push_back(random_digit(*field, rng, i == 0));
  return Element::from_digits(field, shift, digits, abs_prec);
}

Element random_unit(const Field& field, long abs_prec, Rng& rng) {
  return random_element_with_shift(field, 0, abs_prec, rng);
}

Element random_element(const Field& field, long lo, long hi, long abs_prec, Rng& rng) {
  return random_element_with_shift(field, rng.uniform(lo, hi), abs_prec, rng);
}

Element random_fundamental_point(const Element& q, long abs_prec, Rng& rng) {
  const long top = q.is_zero() ? 0 : std::max(0L, q.shift() - 1);
  for (;;) {
    const Element u = random_element(q.field(), 0, top, abs_prec, rng);
    if (u.shift() > 0 || (u - Element::one(q.field(), abs_prec)).shift() == 0) return u;
  }
}

}  // namespace padic_tate
