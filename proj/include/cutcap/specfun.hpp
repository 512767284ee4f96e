#pragma once

#include "cutcap/config.hpp"
#include "cutcap/errors.hpp"

// Evaluation of the hypergeometric family
//   g_k(x) = 2F1(1, -beta_k; 1 - beta_k; -x),  beta_k = k/(alpha-2),
// and of the closed-form antiderivative I_r it builds, robust across all
// argument magnitudes. The closed form has poles whenever k/(alpha-2) is a
// positive integer; those alpha are refused and callers fall back to
// quadrature.
namespace cutcap {

struct HypParams {
  int k = 1;           // 1 or 2
  double alpha = 4.0;  // > 2
};

// Half-width (in alpha) of the refusal window around each pole.
inline constexpr double kExcludedAlphaTol = 1e-3;

// True iff alpha is at least kExcludedAlphaTol away from every pole
// {2 + k/m : m positive integer} of g_k.
bool hyp_params_valid(const HypParams& params) noexcept;
void require_hyp_params(const HypParams& params);

// Validity of the full closed form, which uses both g_1 and g_2.
bool closed_form_alpha_valid(double alpha) noexcept;
void require_closed_form_alpha(double alpha);

inline double beta_of(const HypParams& params) {
  return static_cast<double>(params.k) / (params.alpha - 2.0);
}

// Coefficient of the x^beta term in the large-argument expansion:
// beta * pi / sin(beta * pi).
double leading_coeff(double beta);

// g_k(x) for x >= 0, relative accuracy ~1e-12 over the tested range.
double hyp2f1_gk(const HypParams& params, double x);

namespace specfun_detail {

// Direct defining series sum_n beta/(beta-n) (-x)^n; converges for |x| < 1,
// used for x <= 0.5.
double g_series(double beta, double x);

// Large-argument remainder: g(x) - leading_coeff(beta) * x^beta
//   = -sum_{m>=1} beta/(beta+m) (-1/x)^m; converges for x > 1, used x >= 1.5.
double g_tail_series(double beta, double x);

// Exact representation g_k(x) = x^beta (leading_coeff + k * J) with
//   J = integral_0^{x^{-1/(alpha-2)}} t^{k-1+(alpha-2)} / (1+t^(alpha-2)) dt.
// Uniformly accurate crossover path; J is returned.
double g_gap_integral(int k, double alpha, double x);

}  // namespace specfun_detail

// Closed-form antiderivative of log(1+s_r)(R-r):
//   I_r = log(1+s_r)(R-r/2)r + (alpha-2)(R-r/4)r
//         - (alpha-2)(R g_1(s_r) - (r/4) g_2(s_r)) r.
// Requires d/sqrt(nu) <= r <= R and a non-excluded alpha.
double closed_form_Ir(const NetworkConfig& cfg, double r);

}  // namespace cutcap
