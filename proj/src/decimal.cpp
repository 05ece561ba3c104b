#include "irbox/decimal.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <system_error>

#include "irbox/error.hpp"

namespace irbox {
namespace {

using Mantissa = Decimal::Mantissa;

constexpr int kMaxDigits = 38;
// Beyond the double range in either direction; keeps to_string bounded.
constexpr int kMaxExponent = 400;

Mantissa pow10(int n) {
  Mantissa r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

int digit_count(Mantissa m) {
  if (m < 0) m = -m;
  int n = 1;
  while (m >= 10) {
    m /= 10;
    ++n;
  }
  return n;
}

std::string mantissa_digits(Mantissa m) {
  if (m == 0) return "0";
  bool neg = m < 0;
  std::string out;
  while (m != 0) {
    int digit = static_cast<int>(m % 10);
    out.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
    m /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

// Scales `m` by 10^shift, throwing if the result would exceed kMaxDigits.
Mantissa scale_up(Mantissa m, int shift) {
  if (m == 0 || shift == 0) return m;
  if (digit_count(m) + shift > kMaxDigits) {
    throw std::overflow_error("decimal alignment exceeds 38 digits");
  }
  return m * pow10(shift);
}

}  // namespace

Decimal::Decimal(std::int64_t integer) : mantissa_(integer) { normalize(); }

Decimal::Decimal(Mantissa mantissa, int exponent)
    : mantissa_(mantissa), exponent_(exponent) {
  normalize();
}

void Decimal::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  while (mantissa_ % 10 == 0) {
    mantissa_ /= 10;
    ++exponent_;
  }
}

Decimal Decimal::parse(std::string_view text) {
  auto fail = [&](const char* why) -> Error {
    return Error(ErrorCode::MalformedInput,
                 "invalid decimal '" + std::string(text) + "': " + why);
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  Mantissa mantissa = 0;
  int exponent = 0;
  int significant = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) throw fail("multiple radix points");
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') break;
    any_digit = true;
    if (mantissa != 0 || c != '0') ++significant;
    if (significant > kMaxDigits) throw fail("more than 38 significant digits");
    mantissa = mantissa * 10 + (c - '0');
    if (seen_point) --exponent;
  }
  if (!any_digit) throw fail("no digits");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail("unexpected character");
    ++i;
    int exp_value = 0;
    std::string_view rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exp_value);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) {
      throw fail("bad exponent");
    }
    if (exp_value > kMaxExponent || exp_value < -kMaxExponent) throw fail("exponent out of range");
    exponent += exp_value;
  }
  return Decimal(neg ? -mantissa : mantissa, exponent);
}

Decimal Decimal::from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::MalformedInput, "non-finite value has no decimal form");
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return parse(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

double Decimal::to_double() const {
  std::string s = mantissa_digits(mantissa_) + "e" + std::to_string(exponent_);
  return std::strtod(s.c_str(), nullptr);
}

std::string Decimal::to_string() const {
  std::string digits = mantissa_digits(mantissa_);
  std::string sign;
  if (digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  if (exponent_ >= 0) {
    return sign + digits + std::string(static_cast<std::size_t>(exponent_), '0');
  }
  auto frac = static_cast<std::size_t>(-exponent_);
  if (digits.size() <= frac) {
    return sign + "0." + std::string(frac - digits.size(), '0') + digits;
  }
  return sign + digits.substr(0, digits.size() - frac) + "." +
         digits.substr(digits.size() - frac);
}

Decimal Decimal::abs() const { return Decimal(mantissa_ < 0 ? -mantissa_ : mantissa_, exponent_); }

Decimal Decimal::operator-() const { return Decimal(-mantissa_, exponent_); }

Decimal operator+(const Decimal& lhs, const Decimal& rhs) {
  if (lhs.is_zero()) return rhs;
  if (rhs.is_zero()) return lhs;
  int exponent = std::min(lhs.exponent_, rhs.exponent_);
  Mantissa a = scale_up(lhs.mantissa_, lhs.exponent_ - exponent);
  Mantissa b = scale_up(rhs.mantissa_, rhs.exponent_ - exponent);
  Mantissa sum = 0;
  if (__builtin_add_overflow(a, b, &sum) || digit_count(sum) > kMaxDigits) {
    throw std::overflow_error("decimal sum exceeds 38 digits");
  }
  return Decimal(sum, exponent);
}

Decimal operator-(const Decimal& lhs, const Decimal& rhs) { return lhs + (-rhs); }

std::strong_ordering operator<=>(const Decimal& lhs, const Decimal& rhs) {
  if (lhs.sign() != rhs.sign()) return lhs.sign() <=> rhs.sign();
  if (lhs.is_zero()) return std::strong_ordering::equal;
  // Same sign: compare magnitudes by order of magnitude first.
  int lhs_mag = digit_count(lhs.mantissa_) + lhs.exponent_;
  int rhs_mag = digit_count(rhs.mantissa_) + rhs.exponent_;
  if (lhs_mag != rhs_mag) {
    return lhs.sign() > 0 ? lhs_mag <=> rhs_mag : rhs_mag <=> lhs_mag;
  }
  // Equal magnitudes: the exponent gap is bounded by the digit count.
  int exponent = std::min(lhs.exponent_, rhs.exponent_);
  Mantissa a = lhs.mantissa_ * pow10(lhs.exponent_ - exponent);
  Mantissa b = rhs.mantissa_ * pow10(rhs.exponent_ - exponent);
  return a <=> b;
}

}  // namespace irbox
