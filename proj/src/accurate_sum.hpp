#pragma once

#include <cmath>
#include <initializer_list>
#include <span>

namespace irbox::detail {

/// Neumaier-compensated summation; order-dependent but deterministic.
class AccurateSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  [[nodiscard]] double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double accurate_sum(std::initializer_list<double> values) {
  AccurateSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace irbox::detail
