#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace padic_tate {

/// Small exact rational used for valuations and ball radii. Always stored
/// reduced with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  std::int64_t floor() const;
  std::int64_t ceil() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "r/s", or "r" when the denominator is one.
  std::string to_string() const;
  /// Accepts "r/s" or "r".
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace padic_tate
