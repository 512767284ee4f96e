#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutcap/rng.hpp"
#include "cutcap/stats.hpp"

using namespace cutcap;

TEST_CASE("splitmix64 reference vectors") {
  std::uint64_t s = 0;
  CHECK(splitmix64_next(s) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64_next(s) == 0x6E789E6AA1B965F4ull);
  CHECK(splitmix64_next(s) == 0x06C45D188009454Full);
}

TEST_CASE("seed_for is deterministic and stream-separating") {
  CHECK(seed_for(42, 0) == seed_for(42, 0));
  CHECK(seed_for(42, 0) != seed_for(42, 1));
  CHECK(seed_for(42, 0) != seed_for(43, 0));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.push_back(seed_for(7, i));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("rng determinism") {
  Rng a(123), b(123), c(124);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    all_equal = all_equal && x == y;
    any_diff = any_diff || x != z;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform range and mean") {
  Rng rng(7);
  const int n = 100000;
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(std::fabs(sum / n - 0.5) < 3.0 / std::sqrt(12.0 * n));
  Rng rng2(8);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng2.uniform(-2.0, 5.0);
    CHECK(u >= -2.0);
    CHECK(u < 5.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(11);
  const int n = 100000;
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.normal();
  const double m = mean_of(xs);
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  var /= n - 1;
  CHECK(std::fabs(m) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
  int outside = 0;
  for (double x : xs)
    if (std::fabs(x) > 1.959964) ++outside;
  const double frac = static_cast<double>(outside) / n;
  CHECK(std::fabs(frac - 0.05) < 3.0 * std::sqrt(0.05 * 0.95 / n));
}

TEST_CASE("complex normal unit second moment") {
  Rng rng(13);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::norm(rng.complex_normal());
  CHECK(std::fabs(sum / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("unit phase lies on the unit circle") {
  Rng rng(17);
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < 20000; ++i) {
    const auto h = rng.unit_phase();
    CHECK(std::fabs(std::norm(h) - 1.0) < 1e-14);
    acc += h;
  }
  CHECK(std::abs(acc) / 20000 < 0.02);  // isotropy: mean vanishes
}

TEST_CASE("poisson small-mean inversion") {
  Rng rng(19);
  const int n = 20000;
  const double lambda = 3.0;
  std::vector<double> xs(n);
  for (double& x : xs) x = static_cast<double>(rng.poisson(lambda));
  const double m = mean_of(xs);
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  var /= n - 1;
  CHECK(std::fabs(m - lambda) < 3.0 * std::sqrt(lambda / n));
  CHECK(var / m > 0.9);
  CHECK(var / m < 1.1);
}

TEST_CASE("poisson large-mean rejection sampler") {
  Rng rng(23);
  const int n = 20000;
  const double lambda = 100.0;
  std::vector<double> xs(n);
  for (double& x : xs) x = static_cast<double>(rng.poisson(lambda));
  const double m = mean_of(xs);
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  var /= n - 1;
  CHECK(std::fabs(m - lambda) < 3.0 * std::sqrt(lambda / n));
  CHECK(var / m > 0.95);
  CHECK(var / m < 1.05);
}

TEST_CASE("poisson edge means") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), validation_error);
}

TEST_CASE("kahan summation") {
  std::vector<double> xs(100000, 0.1);
  CHECK(std::fabs(kahan_sum(xs) - 10000.0) < 1e-9);
  CHECK(kahan_sum(std::vector<double>{1e16, 1.0, -1e16}) == 1.0);
  CHECK(kahan_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("mean and standard error") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(mean_of(xs) == doctest::Approx(2.5));
  // sd = sqrt(5/3), se = sd/2
  CHECK(std_error_of_mean(xs) == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(std_error_of_mean(std::vector<double>{7.0}) == 0.0);
}

TEST_CASE("linear fit recovers exact and noisy lines") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(i);
    ys.push_back(2.0 * i + 1.0);
  }
  const LinearFit exact = linear_fit(xs, ys);
  CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(31);
  std::vector<double> yn;
  for (int i = 0; i < 200; ++i) yn.push_back(-0.5 * xs.size());
  xs.clear();
  yn.clear();
  for (int i = 0; i < 200; ++i) {
    xs.push_back(0.1 * i);
    yn.push_back(-0.5 * 0.1 * i + 3.0 + 0.01 * rng.normal());
  }
  const LinearFit noisy = linear_fit(xs, yn);
  CHECK(noisy.slope == doctest::Approx(-0.5).epsilon(0.01));
  CHECK(noisy.intercept == doctest::Approx(3.0).epsilon(0.01));
  CHECK(noisy.r_squared > 0.99);
}

TEST_CASE("proportion estimate") {
  const ProbEstimate p = proportion_estimate(30, 100);
  CHECK(p.value == doctest::Approx(0.3));
  CHECK(p.std_error == doctest::Approx(std::sqrt(0.3 * 0.7 / 100)));
  CHECK(p.trials == 100);
  CHECK_FALSE(p.supercritical_warning);
  CHECK(proportion_estimate(0, 50).std_error == 0.0);
  CHECK(proportion_estimate(50, 50).value == 1.0);
}
