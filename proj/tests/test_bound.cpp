#include <doctest.h>

#include <cmath>
#include <vector>

#include "cutcap/bound.hpp"
#include "cutcap/quadrature.hpp"
#include "cutcap/rng.hpp"
#include "oracle_helpers.hpp"

using namespace cutcap;

namespace {

NetworkConfig canonical(double alpha, double p) {
  NetworkConfig cfg;
  cfg.nu = 1.0;
  cfg.R = 100.0;
  cfg.W = 1e3;
  cfg.N = 1.0;
  cfg.alpha = alpha;
  cfg.P = p * cfg.N * cfg.W;
  return cfg;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_CASE("adaptive quadrature basics") {
  const auto q1 = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0,
                                     0.0, 1e-12);
  CHECK(q1.converged);
  CHECK(q1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // five decades with an integrable spike toward the left endpoint
  const auto q2 = integrate_adaptive([](double x) { return 1.0 / x; }, 1e-4,
                                     10.0, 0.0, 1e-12);
  CHECK(q2.converged);
  CHECK(q2.value == doctest::Approx(std::log(1e5)).epsilon(1e-10));

  const auto q3 = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0,
                                     40.0, 1e-10, 0.0, true);
  CHECK(q3.converged);
  CHECK(q3.error_estimate <= 1e-10);
  CHECK(q3.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("snr profile frozen values and invariances") {
  const NetworkConfig cfg = canonical(4.0, 1.0);
  CHECK(rel_err(snr_profile(cfg, 1.198), oracle::kSnrShortAlpha4) < 1e-14);
  CHECK(rel_err(snr_profile(cfg, 100.0), oracle::kSnrLongAlpha4) < 1e-14);

  const auto [s_short, s_long] = short_long_snr(cfg);
  CHECK(s_short == snr_profile(cfg, cfg.short_range_r()));
  CHECK(s_long == snr_profile(cfg, cfg.R));

  // s_r r^{alpha-2} is constant in r
  const NetworkConfig c2 = canonical(3.3, 2.5);
  const double k1 = snr_profile(c2, 5.0) * std::pow(5.0, 1.3);
  for (double r : {2.0, 17.0, 60.0, 99.0})
    CHECK(rel_err(snr_profile(c2, r) * std::pow(r, 1.3), k1) < 1e-12);

  // scaling P and N together changes nothing
  NetworkConfig c3 = canonical(4.0, 1.0);
  c3.P *= 7.5;
  c3.N *= 7.5;
  CHECK(snr_profile(c3, 10.0) == snr_profile(cfg, 10.0));
}

TEST_CASE("regime classification semantics") {
  // deep bandwidth-limited
  CHECK(classify_regime(canonical(4.0, 1e10)).regime_case == RegimeCase::I);
  // low SNR everywhere, alpha < 3
  CHECK(classify_regime(canonical(2.5, 1e-8)).regime_case == RegimeCase::II);
  // alpha exactly 3
  CHECK(classify_regime(canonical(3.0, 1e-8)).regime_case ==
        RegimeCase::BOUNDARY_alpha3);
  // alpha > 3 splits the low-SNR side on the short-range scale
  CHECK(classify_regime(canonical(4.0, 100.0)).regime_case == RegimeCase::III);
  CHECK(classify_regime(canonical(4.0, 1e-3)).regime_case == RegimeCase::IV);

  // dead band: s_short = 2.19 at p = 1 is ambiguous under the default band
  CHECK_THROWS_AS(classify_regime(canonical(4.0, 1.0)), ambiguous_regime_error);
  try {
    classify_regime(canonical(4.0, 1.0));
  } catch (const ambiguous_regime_error& e) {
    CHECK(e.candidate_a == RegimeCase::III);
    CHECK(e.candidate_b == RegimeCase::IV);
  }
  // collapsing the band resolves it
  CHECK(classify_regime(canonical(4.0, 1.0), 1.0, 1.0).regime_case ==
        RegimeCase::III);

  // s_long inside the band is ambiguous against case I
  CHECK_THROWS_AS(classify_regime(canonical(4.0, 1e3)), ambiguous_regime_error);

  // labels carry the SNR scales
  const RegimeLabel label = classify_regime(canonical(4.0, 1e10));
  const auto [ss, sl] = short_long_snr(canonical(4.0, 1e10));
  CHECK(label.s_short == ss);
  CHECK(label.s_long == sl);
}

TEST_CASE("quadrature bound frozen canonical values") {
  const BoundResult a25 = cutset_bound_quadrature(canonical(2.5, 1.0));
  CHECK(rel_err(a25.value_nats_s, oracle::kBoundAlpha25) < 1e-10);
  CHECK(a25.method == BoundMethod::quadrature);

  const BoundResult a4 = cutset_bound_quadrature(canonical(4.0, 1.0));
  CHECK(rel_err(a4.value_nats_s, oracle::kBoundAlpha4) < 1e-10);

  NetworkConfig small = canonical(4.0, 1.0);
  small.R = 5.0;
  const double ps[3] = {0.1, 1.0, 10.0};
  for (int i = 0; i < 3; ++i) {
    small.P = ps[i] * small.N * small.W;
    CHECK(rel_err(cutset_bound_quadrature(small).value_nats_s,
                  oracle::kBoundR5[i]) < 1e-10);
  }
}

TEST_CASE("quadrature bound respects an explicit absolute tolerance") {
  const NetworkConfig cfg = canonical(4.0, 1.0);
  const double abs_tol = 1e-2;  // nats/s
  const BoundResult res = cutset_bound_quadrature(cfg, abs_tol);
  REQUIRE(res.quadrature_abs_tol.has_value());
  CHECK(*res.quadrature_abs_tol <= abs_tol);
  CHECK(std::fabs(res.value_nats_s - oracle::kBoundAlpha4) < abs_tol);
}

TEST_CASE("zero power gives a zero bound") {
  NetworkConfig cfg = canonical(4.0, 1.0);
  cfg.P = 0.0;
  CHECK(cutset_bound_quadrature(cfg).value_nats_s == 0.0);
}

TEST_CASE("closed form matches quadrature across random configurations") {
  Rng rng(1234);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    NetworkConfig cfg;
    cfg.alpha = oracle::random_valid_alpha(rng);
    cfg.nu = std::pow(10.0, rng.uniform(-2.0, 2.0));
    cfg.R = cfg.short_range_r() * std::pow(10.0, rng.uniform(0.15, 2.5));
    cfg.W = std::pow(10.0, rng.uniform(0.0, 6.0));
    cfg.N = 1.0;
    cfg.P = std::pow(10.0, rng.uniform(-6.0, 6.0)) * cfg.N * cfg.W;
    const double q = cutset_bound_quadrature(cfg).value_nats_s;
    const double cf = cutset_bound_closed_form(cfg).value_nats_s;
    worst = std::max(worst, rel_err(cf, q));
    INFO("alpha=", cfg.alpha, " nu=", cfg.nu, " R=", cfg.R, " p=",
         cfg.p_over_nw());
    CHECK(rel_err(cf, q) < 1e-8);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("closed form refuses excluded exponents") {
  for (double alpha : {2.5, 3.0, 4.0, 2.0 + 2.0 / 3.0})
    CHECK_THROWS_AS(cutset_bound_closed_form(canonical(alpha, 1.0)),
                    excluded_alpha_error);
}

TEST_CASE("bound is monotone in power, bandwidth, density, and radius") {
  auto value = [](const NetworkConfig& cfg) {
    return cutset_bound_quadrature(cfg).value_nats_s;
  };
  NetworkConfig cfg = canonical(3.5, 1.0);
  double prev = value(cfg);
  for (double f : {2.0, 4.0, 8.0}) {
    NetworkConfig c = cfg;
    c.P *= f;
    const double v = value(c);
    CHECK(v > prev);
    prev = v;
  }
  prev = value(cfg);
  for (double f : {2.0, 4.0, 8.0}) {
    NetworkConfig c = cfg;
    c.W *= f;
    const double v = value(c);
    CHECK(v > prev);
    prev = v;
  }
  prev = value(cfg);
  for (double f : {2.0, 4.0, 8.0}) {
    NetworkConfig c = cfg;
    c.nu *= f;
    const double v = value(c);
    CHECK(v > prev);
    prev = v;
  }
  prev = value(cfg);
  for (double f : {2.0, 4.0, 8.0}) {
    NetworkConfig c = cfg;
    c.R *= f;
    const double v = value(c);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("regime constants frozen values and domains") {
  CHECK(rel_err(regime_constant_K1(2.5), oracle::kK1At25) < 1e-14);
  CHECK(rel_err(regime_constant_K2(4.0), oracle::kK2At4) < 1e-14);
  CHECK(rel_err(regime_constant_K3(4.0, 1.198), oracle::kK3At4) < 1e-14);
  CHECK_THROWS_AS(regime_constant_K1(3.2), validation_error);
  CHECK_THROWS_AS(regime_constant_K2(2.5), validation_error);
  CHECK_THROWS_AS(regime_constant_K3(3.0, 1.198), validation_error);
}

TEST_CASE("asymptotes approach the bound along documented rays") {
  auto ratio = [](const NetworkConfig& cfg, bool second_order) {
    const double q = cutset_bound_quadrature(cfg).value_nats_s;
    const double a = regime_asymptote(cfg, 1.0, 1.0, second_order).value_nats_s;
    return a / q;
  };

  // case II ladder: accuracy improves with R
  NetworkConfig ii = canonical(2.5, 1e-12);
  double prev_gap = 1e9;
  for (double R : {1e2, 1e3, 1e4}) {
    ii.R = R;
    const double gap = std::fabs(ratio(ii, false) - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.05);

  // case IV ladder
  NetworkConfig iv = canonical(4.0, 1e-3);
  prev_gap = 1e9;
  for (double R : {1e3, 1e4, 1e5}) {
    iv.R = R;
    const double gap = std::fabs(ratio(iv, false) - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.05);

  // case I with the second-order constant
  NetworkConfig one = canonical(4.0, 1e30);
  CHECK(std::fabs(ratio(one, true) - 1.0) < 0.05);

  // alpha = 3 boundary
  NetworkConfig a3 = canonical(3.0, 1e-3);
  a3.R = 1e13;
  CHECK(std::fabs(ratio(a3, false) - 1.0) < 0.05);

  // case III
  NetworkConfig iii = canonical(4.0, 1e4);
  iii.R = 1e5;
  CHECK(std::fabs(ratio(iii, false) - 1.0) < 0.05);
}

TEST_CASE("regime_asymptote propagates ambiguity") {
  CHECK_THROWS_AS(regime_asymptote(canonical(4.0, 1.0)), ambiguous_regime_error);
}

TEST_CASE("configuration validation") {
  NetworkConfig cfg;
  cfg.nu = 1.0;
  cfg.R = 1.0;  // below d/sqrt(nu) = 1.198
  CHECK_THROWS_AS(cfg.validate(), validation_error);
  NetworkConfig bad = canonical(4.0, 1.0);
  bad.alpha = 2.0;
  CHECK_THROWS_AS(bad.validate(), validation_error);
  bad = canonical(4.0, 1.0);
  bad.W = 0.0;
  CHECK_THROWS_AS(bad.validate(), validation_error);
}
