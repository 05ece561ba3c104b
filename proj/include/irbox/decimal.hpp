#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace irbox {

/// Exact base-10 number: mantissa * 10^exponent, normalized so the mantissa
/// carries no trailing zeros. Holds up to 38 significant digits.
///
/// Currency amounts are kept in this form from ingestion through validation so
/// the accounting identity is checked without binary rounding; index math
/// converts to double via to_double(), which is correctly rounded.
class Decimal {
 public:
  using Mantissa = __int128;

  constexpr Decimal() = default;
  Decimal(std::int64_t integer);  // NOLINT(google-explicit-constructor)

  /// Parses "[+-]digits[.digits][(e|E)[+-]digits]". Throws Error(MalformedInput).
  static Decimal parse(std::string_view text);
  /// Exact decimal of the shortest string that round-trips `value`.
  static Decimal from_double(double value);

  [[nodiscard]] double to_double() const;
  /// Plain positional notation, e.g. "-12.5", "300", "0.001".
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] bool is_zero() const noexcept { return mantissa_ == 0; }
  [[nodiscard]] bool is_negative() const noexcept { return mantissa_ < 0; }
  [[nodiscard]] int sign() const noexcept { return (mantissa_ > 0) - (mantissa_ < 0); }

  [[nodiscard]] Decimal abs() const;
  Decimal operator-() const;

  /// Exact sum/difference. Throws std::overflow_error if the aligned result
  /// exceeds 38 digits.
  friend Decimal operator+(const Decimal& lhs, const Decimal& rhs);
  friend Decimal operator-(const Decimal& lhs, const Decimal& rhs);

  friend bool operator==(const Decimal& lhs, const Decimal& rhs) = default;
  friend std::strong_ordering operator<=>(const Decimal& lhs, const Decimal& rhs);

 private:
  Decimal(Mantissa mantissa, int exponent);
  void normalize();

  Mantissa mantissa_ = 0;
  int exponent_ = 0;
};

}  // namespace irbox
