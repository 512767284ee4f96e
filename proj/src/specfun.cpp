#include "cutcap/specfun.hpp"

#include <cmath>

#include "cutcap/bound.hpp"
#include "cutcap/quadrature.hpp"

namespace cutcap {

namespace {

// Distance in alpha from the nearest pole {2 + k/m : m in Z+} of g_k.
double pole_distance(int k, double alpha) {
  const double gamma = alpha - 2.0;
  if (!(gamma > 0.0)) return 0.0;
  const double m_star = static_cast<double>(k) / gamma;
  double best = std::fabs(alpha - (2.0 + static_cast<double>(k)));  // m = 1
  for (double m : {std::floor(m_star), std::ceil(m_star)}) {
    if (m >= 1.0) best = std::min(best, std::fabs(alpha - (2.0 + k / m)));
  }
  return best;
}

}  // namespace

bool hyp_params_valid(const HypParams& params) noexcept {
  if (params.k != 1 && params.k != 2) return false;
  if (!(params.alpha > 2.0)) return false;
  return pole_distance(params.k, params.alpha) >= kExcludedAlphaTol;
}

void require_hyp_params(const HypParams& params) {
  if (params.k != 1 && params.k != 2)
    throw validation_error("hypergeometric index k must be 1 or 2");
  if (!(params.alpha > 2.0)) throw validation_error("alpha must be > 2");
  if (!hyp_params_valid(params))
    throw excluded_alpha_error(
        params.alpha,
        "alpha within 1e-3 of a closed-form pole (k/(alpha-2) a positive "
        "integer); use the quadrature path");
}

bool closed_form_alpha_valid(double alpha) noexcept {
  return hyp_params_valid({1, alpha}) && hyp_params_valid({2, alpha});
}

void require_closed_form_alpha(double alpha) {
  require_hyp_params({1, alpha});
  require_hyp_params({2, alpha});
}

double leading_coeff(double beta) {
  const double s = std::sin(beta * M_PI);
  if (std::fabs(s) < 1e-8)
    throw excluded_alpha_error(0.0, "leading coefficient pole: beta too close to an integer");
  return beta * M_PI / s;
}

namespace specfun_detail {

double g_series(double beta, double x) {
  double power = 1.0;  // (-x)^n
  double sum = 1.0;    // n = 0 term
  for (int n = 1; n <= 400; ++n) {
    power *= -x;
    const double term = beta / (beta - n) * power;
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) return sum;
  }
  throw numerical_error("hypergeometric series did not converge", 1.0);
}

double g_tail_series(double beta, double x) {
  const double inv = 1.0 / x;
  double power = 1.0;  // inv^m
  double sum = 0.0;
  for (int m = 1; m <= 2000; ++m) {
    power *= inv;
    const double term = beta / (beta + m) * power;
    sum += (m & 1) ? term : -term;
    if (term <= 1e-17 * std::fabs(sum) + 1e-300) return sum;
  }
  throw numerical_error("hypergeometric tail series did not converge", 0.0);
}

double g_gap_integral(int k, double alpha, double x) {
  const double gamma = alpha - 2.0;
  const double upper = std::pow(x, -1.0 / gamma);
  if (upper == 0.0) return 0.0;
  auto f = [k, gamma](double t) {
    return std::pow(t, k - 1 + gamma) / (1.0 + std::pow(t, gamma));
  };
  const QuadResult q = integrate_adaptive(f, 0.0, upper, 0.0, 1e-13);
  if (!q.converged)
    throw numerical_error("crossover integral did not converge", q.value);
  return q.value;
}

}  // namespace specfun_detail

double hyp2f1_gk(const HypParams& params, double x) {
  require_hyp_params(params);
  if (!(x >= 0.0)) throw validation_error("hyp2f1_gk requires x >= 0");
  if (x == 0.0) return 1.0;
  const double beta = beta_of(params);
  if (x <= 0.5) return specfun_detail::g_series(beta, x);
  if (x >= 1.5)
    return leading_coeff(beta) * std::pow(x, beta) +
           specfun_detail::g_tail_series(beta, x);
  const double J = specfun_detail::g_gap_integral(params.k, params.alpha, x);
  return std::pow(x, beta) * (leading_coeff(beta) + params.k * J);
}

double closed_form_Ir(const NetworkConfig& cfg, double r) {
  cfg.validate();
  require_closed_form_alpha(cfg.alpha);
  const double r0 = cfg.short_range_r();
  if (!(r >= r0) || !(r <= cfg.R))
    throw validation_error("closed_form_Ir requires d/sqrt(nu) <= r <= R");
  if (cfg.P == 0.0) return 0.0;

  const double gamma = cfg.alpha - 2.0;
  const double s = snr_profile(cfg, r);
  const double g1 = hyp2f1_gk({1, cfg.alpha}, s);
  const double g2 = hyp2f1_gk({2, cfg.alpha}, s);
  return std::log1p(s) * (cfg.R - r / 2.0) * r + gamma * (cfg.R - r / 4.0) * r -
         gamma * (cfg.R * g1 - (r / 4.0) * g2) * r;
}

}  // namespace cutcap
