#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace irbox {

/// Exact rational with 64-bit numerator/denominator, always in lowest terms
/// with a positive denominator. Arithmetic runs through 128-bit intermediates
/// and throws std::overflow_error when a reduced result no longer fits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t integer);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// 2^exponent for any exponent in [-62, 62].
  static Rational power_of_two(int exponent);
  static Rational pow(const Rational& base, int exponent);

  [[nodiscard]] std::int64_t numerator() const noexcept { return num_; }
  [[nodiscard]] std::int64_t denominator() const noexcept { return den_; }
  [[nodiscard]] double to_double() const noexcept;
  /// "num/den"; integers keep the "/1" so the format is uniform.
  [[nodiscard]] std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& other) { return *this = *this + other; }
  Rational& operator-=(const Rational& other) { return *this = *this - other; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 numerator, __int128 denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace irbox
