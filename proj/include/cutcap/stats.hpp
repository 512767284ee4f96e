#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cutcap/errors.hpp"

namespace cutcap {

// Neumaier's variant keeps the compensation correct even when a later
// addend cancels an earlier, larger one.
inline double kahan_sum(const std::vector<double>& xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

inline double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw validation_error("mean of empty sample");
  return kahan_sum(xs) / static_cast<double>(xs.size());
}

// Standard error of the sample mean; 0 for a single observation.
inline double std_error_of_mean(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw validation_error("std error of empty sample");
  if (n == 1) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw validation_error("linear_fit needs >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw validation_error("linear_fit with constant x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

// Binomial proportion with its standard error.
struct ProbEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  bool supercritical_warning = false;
};

inline ProbEstimate proportion_estimate(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw validation_error("proportion over zero trials");
  ProbEstimate e;
  e.trials = trials;
  e.value = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  return e;
}

}  // namespace cutcap
