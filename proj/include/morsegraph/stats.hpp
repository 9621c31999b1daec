#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "morsegraph/error.hpp"

namespace morsegraph {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw Error(ErrorKind::InvalidParameter, "Wilson interval needs trials >= 1");
  if (successes > trials) throw Error(ErrorKind::InvalidParameter, "successes exceed trials");
  if (!(z > 0.0)) throw Error(ErrorKind::InvalidParameter, "z must be positive");
  const double t = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double centre = (phat + z2 / (2.0 * t)) / denom;
  const double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t));
  // Rounding can push an endpoint past the estimate at 0 or t successes.
  return {std::clamp(std::min(centre - half, phat), 0.0, 1.0), std::clamp(std::max(centre + half, phat), 0.0, 1.0)};
}

/// Welford accumulator for a sample mean and unbiased variance.
class RunningMoments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double standard_error() const noexcept {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace morsegraph
