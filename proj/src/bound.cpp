#include "cutcap/bound.hpp"

#include <cmath>

#include "cutcap/quadrature.hpp"
#include "cutcap/specfun.hpp"

namespace cutcap {

const char* regime_name(RegimeCase c) {
  switch (c) {
    case RegimeCase::I: return "I";
    case RegimeCase::II: return "II";
    case RegimeCase::III: return "III";
    case RegimeCase::IV: return "IV";
    case RegimeCase::BOUNDARY_alpha3: return "BOUNDARY_alpha3";
  }
  return "?";
}

double snr_profile(const NetworkConfig& cfg, double r) {
  cfg.validate();
  if (!(r > 0.0)) throw validation_error("snr_profile requires r > 0");
  const double gamma = cfg.alpha - 2.0;
  return 2.0 * M_PI * cfg.nu * std::pow(r, -gamma) / gamma * cfg.p_over_nw();
}

std::pair<double, double> short_long_snr(const NetworkConfig& cfg) {
  cfg.validate();
  return {snr_profile(cfg, cfg.short_range_r()), snr_profile(cfg, cfg.R)};
}

namespace {

RegimeCase low_band_case(const NetworkConfig& cfg, double s_short, double threshold,
                         double dead_band) {
  if (cfg.alpha < 3.0) return RegimeCase::II;
  if (cfg.alpha == 3.0) return RegimeCase::BOUNDARY_alpha3;
  const double hi = threshold * dead_band, lo = threshold / dead_band;
  if (s_short > hi) return RegimeCase::III;
  if (s_short < lo) return RegimeCase::IV;
  throw ambiguous_regime_error(RegimeCase::III, RegimeCase::IV, s_short);
}

}  // namespace

RegimeLabel classify_regime(const NetworkConfig& cfg, double threshold,
                            double dead_band) {
  cfg.validate();
  if (!(threshold > 0.0)) throw validation_error("threshold must be > 0");
  if (!(dead_band >= 1.0)) throw validation_error("dead_band must be >= 1");
  const auto [s_short, s_long] = short_long_snr(cfg);
  const double hi = threshold * dead_band, lo = threshold / dead_band;

  RegimeCase c;
  if (s_long > hi) {
    c = RegimeCase::I;
  } else if (s_long < lo) {
    c = low_band_case(cfg, s_short, threshold, dead_band);
  } else {
    // Name the low candidate with the hard threshold, for the message only.
    const RegimeCase other =
        cfg.alpha < 3.0
            ? RegimeCase::II
            : (cfg.alpha == 3.0
                   ? RegimeCase::BOUNDARY_alpha3
                   : (s_short > threshold ? RegimeCase::III : RegimeCase::IV));
    throw ambiguous_regime_error(RegimeCase::I, other, s_long);
  }
  return {c, s_long, s_short};
}

namespace {

std::optional<RegimeLabel> try_classify(const NetworkConfig& cfg) {
  try {
    return classify_regime(cfg);
  } catch (const ambiguous_regime_error&) {
    return std::nullopt;
  }
}

double ipow(double v, int k) { return k == 1 ? v : v * v; }

// tau_k(r) = r^k g_k(s_r) - leading_coeff * rstar^k with rstar = s^{-1}(1):
// the r-independent x^beta part of g_k is cancelled analytically, so
// differences of tau between integration limits stay fully precise.
double tau_term(int k, double alpha, double r, double x, double rstar) {
  const double beta = static_cast<double>(k) / (alpha - 2.0);
  if (x >= 1.5) return ipow(r, k) * specfun_detail::g_tail_series(beta, x);
  const bool gap_safe =
      (static_cast<double>(k) / (alpha - 2.0)) * std::log10(1.0 / 0.3) < 150.0;
  if (x > 0.3 && gap_safe)
    return ipow(rstar, k) * k * specfun_detail::g_gap_integral(k, alpha, x);
  const double g = x <= 0.5 ? specfun_detail::g_series(beta, x)
                            : hyp2f1_gk({k, alpha}, x);
  return ipow(r, k) * g - leading_coeff(beta) * ipow(rstar, k);
}

// 2 pi nu W * integral of log(1+s_r)(R-r) over [r0, R], evaluated jointly
// through the antiderivative. Three branches: P = 0, a log1p power series in
// s(r0) for the deep-linear region, and the tau-difference form elsewhere.
double closed_form_value(const NetworkConfig& cfg) {
  if (cfg.P == 0.0) return 0.0;
  const double gamma = cfg.alpha - 2.0;
  const double r0 = cfg.short_range_r();
  const double R = cfg.R;
  const double A = 2.0 * M_PI * cfg.nu * cfg.p_over_nw() / gamma;  // s_r = A r^-gamma
  const double s0 = A * std::pow(r0, -gamma);
  const double sR = A * std::pow(R, -gamma);
  const double front = 2.0 * M_PI * cfg.nu * cfg.W;

  if (s0 < 0.9) {
    // integral = sum_m (-1)^{m+1} s0^m / m * int_{r0}^{R} (r/r0)^{-m gamma} (R-r) dr;
    // the inner integrals are elementary. Exponent poles 1 - m gamma and
    // 2 - m gamma vanish only at excluded alpha.
    const double q = R / r0;
    double s_pow = 1.0, total = 0.0;
    for (int m = 1; m <= 500; ++m) {
      s_pow *= s0;
      const double mg = m * gamma;
      const double term =
          s_pow / m *
          (R * r0 * (std::pow(q, 1.0 - mg) - 1.0) / (1.0 - mg) -
           r0 * r0 * (std::pow(q, 2.0 - mg) - 1.0) / (2.0 - mg));
      total += (m & 1) ? term : -term;
      if (std::fabs(term) <= 1e-17 * std::fabs(total)) return front * total;
    }
    throw numerical_error("small-s expansion did not converge", front * total);
  }

  // rstar = s^{-1}(1); only the branches with s_r < 1.5 consume it, where
  // R * sR^{1/gamma} cannot overflow for any realistic gamma.
  const double rstar = sR < 1.5 ? R * std::pow(sR, 1.0 / gamma) : 0.0;
  if (!std::isfinite(rstar))
    throw numerical_error(
        "closed form overflows at this alpha; use the quadrature path");
  auto L = [&](double r, double s) {
    return std::log1p(s) * (R - r / 2.0) * r + gamma * (R - r / 4.0) * r;
  };
  const double tau1 = tau_term(1, cfg.alpha, R, sR, rstar) -
                      tau_term(1, cfg.alpha, r0, s0, rstar);
  const double tau2 = tau_term(2, cfg.alpha, R, sR, rstar) -
                      tau_term(2, cfg.alpha, r0, s0, rstar);
  const double diff = (L(R, sR) - L(r0, s0)) - gamma * (R * tau1 - tau2 / 4.0);
  return front * diff;
}

}  // namespace

BoundResult cutset_bound_quadrature(const NetworkConfig& cfg, double abs_tol) {
  cfg.validate();
  BoundResult res;
  res.method = BoundMethod::quadrature;
  res.regime = try_classify(cfg);
  if (cfg.P == 0.0) {
    res.quadrature_abs_tol = 0.0;
    return res;
  }

  const double r0 = cfg.short_range_r();
  const double front = 2.0 * M_PI * cfg.nu * cfg.W;
  auto f = [&cfg](double r) {
    return std::log1p(snr_profile(cfg, r)) * (cfg.R - r);
  };

  QuadResult q;
  if (abs_tol > 0.0) {
    q = integrate_adaptive(f, r0, cfg.R, abs_tol / front, 1e-12, true);
  } else {
    q = integrate_adaptive(f, r0, cfg.R, 0.0, 1e-10);
  }
  if (!q.converged)
    throw numerical_error("cutset bound quadrature did not converge",
                          front * q.value);
  res.value_nats_s = front * q.value;
  res.quadrature_abs_tol = front * q.error_estimate;
  return res;
}

BoundResult cutset_bound_closed_form(const NetworkConfig& cfg) {
  cfg.validate();
  require_closed_form_alpha(cfg.alpha);
  BoundResult res;
  res.method = BoundMethod::closed_form;
  res.regime = try_classify(cfg);
  res.value_nats_s = closed_form_value(cfg);
  return res;
}

double regime_constant_K1(double alpha) {
  if (!(alpha > 2.0 && alpha < 3.0))
    throw validation_error("K1 requires 2 < alpha < 3");
  return 4.0 * M_PI * M_PI / ((alpha - 2.0) * (3.0 - alpha) * (4.0 - alpha));
}

double regime_constant_K2(double alpha) {
  if (!(alpha > 3.0)) throw validation_error("K2 requires alpha > 3");
  const double gamma = alpha - 2.0;
  return std::pow(2.0 * M_PI, (alpha - 1.0) / gamma) /
         std::pow(gamma, 1.0 / gamma) * M_PI / std::sin(M_PI / gamma);
}

double regime_constant_K3(double alpha, double d) {
  if (!(alpha > 3.0)) throw validation_error("K3 requires alpha > 3");
  if (!(d > 0.0)) throw validation_error("K3 requires d > 0");
  return 4.0 * M_PI * M_PI * std::pow(d, 3.0 - alpha) /
         ((alpha - 2.0) * (alpha - 3.0));
}

double regime_asymptote_value(const NetworkConfig& cfg, RegimeCase c,
                              bool second_order_case1) {
  cfg.validate();
  const double p_n = cfg.P / cfg.N;
  switch (c) {
    case RegimeCase::I: {
      const double s_long = snr_profile(cfg, cfg.R);
      const double bracket =
          std::log(s_long) + (second_order_case1 ? 1.5 * (cfg.alpha - 2.0) : 0.0);
      return M_PI * cfg.nu * cfg.R * cfg.R * cfg.W * bracket;
    }
    case RegimeCase::II:
      return regime_constant_K1(cfg.alpha) * cfg.nu * cfg.nu *
             std::pow(cfg.R, 4.0 - cfg.alpha) * p_n;
    case RegimeCase::BOUNDARY_alpha3:
      return 4.0 * M_PI * M_PI * cfg.nu * cfg.nu * cfg.R * std::log(cfg.R) * p_n;
    case RegimeCase::III: {
      const double gamma = cfg.alpha - 2.0;
      return regime_constant_K2(cfg.alpha) *
             std::pow(cfg.nu, (cfg.alpha - 1.0) / gamma) * cfg.R *
             std::pow(p_n, 1.0 / gamma) * std::pow(cfg.W, (cfg.alpha - 3.0) / gamma);
    }
    case RegimeCase::IV:
      return regime_constant_K3(cfg.alpha, cfg.d) *
             std::pow(cfg.nu, (1.0 + cfg.alpha) / 2.0) * cfg.R * p_n;
  }
  throw validation_error("unknown regime case");
}

BoundResult regime_asymptote(const NetworkConfig& cfg, double threshold,
                             double dead_band, bool second_order_case1) {
  const RegimeLabel label = classify_regime(cfg, threshold, dead_band);
  BoundResult res;
  res.method = BoundMethod::asymptote;
  res.regime = label;
  res.value_nats_s =
      regime_asymptote_value(cfg, label.regime_case, second_order_case1);
  return res;
}

}  // namespace cutcap
