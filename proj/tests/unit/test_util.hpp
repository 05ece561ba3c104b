#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include <doctest.h>

#include "irbox/error.hpp"

namespace irbox::test {

/// Distance in representable doubles between two finite values.
inline std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  auto key = [](double v) {
    auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  auto ka = key(a);
  auto kb = key(b);
  return ka > kb ? static_cast<std::uint64_t>(ka) - static_cast<std::uint64_t>(kb)
                 : static_cast<std::uint64_t>(kb) - static_cast<std::uint64_t>(ka);
}

}  // namespace irbox::test

#define CHECK_ERROR_CODE(expr, expected_code)                        \
  do {                                                               \
    bool caught_ = false;                                            \
    try {                                                            \
      (void)(expr);                                                  \
    } catch (const ::irbox::Error& e_) {                             \
      caught_ = true;                                                \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());        \
    }                                                                \
    CHECK_MESSAGE(caught_, "expected an irbox::Error from " #expr);  \
  } while (false)
