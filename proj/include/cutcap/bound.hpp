#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cutcap/config.hpp"
#include "cutcap/errors.hpp"

namespace cutcap {

enum class RegimeCase { I, II, III, IV, BOUNDARY_alpha3 };

const char* regime_name(RegimeCase c);

struct RegimeLabel {
  RegimeCase regime_case;
  double s_long = 0.0;
  double s_short = 0.0;
};

struct ambiguous_regime_error : validation_error {
  ambiguous_regime_error(RegimeCase a, RegimeCase b, double s_value)
      : validation_error(std::string("regime ambiguous between ") +
                         regime_name(a) + " and " + regime_name(b) +
                         ": s inside dead band, s = " + std::to_string(s_value)),
        candidate_a(a),
        candidate_b(b) {}
  RegimeCase candidate_a;
  RegimeCase candidate_b;
};

enum class BoundMethod { quadrature, closed_form, asymptote };

struct BoundResult {
  double value_nats_s = 0.0;
  BoundMethod method = BoundMethod::quadrature;
  std::optional<RegimeLabel> regime;             // unset when classification is ambiguous
  std::optional<double> quadrature_abs_tol;      // achieved error estimate, quadrature only
};

inline constexpr double kDefaultRegimeThreshold = 1.0;
inline constexpr double kDefaultRegimeDeadBand = 10.0;

// SNR profile s_r = (2 pi nu r^(2-alpha) / (alpha-2)) * P/(NW).
double snr_profile(const NetworkConfig& cfg, double r);

// (s at r = d/sqrt(nu), s at r = R).
std::pair<double, double> short_long_snr(const NetworkConfig& cfg);

// Regime decision from the two SNR scales. Values of s inside the open dead
// band (threshold/dead_band, threshold*dead_band) raise
// ambiguous_regime_error naming both candidates.
RegimeLabel classify_regime(const NetworkConfig& cfg,
                            double threshold = kDefaultRegimeThreshold,
                            double dead_band = kDefaultRegimeDeadBand);

// 2 pi nu W * integral_{d/sqrt(nu)}^{R} log(1+s_r)(R-r) dr by adaptive
// quadrature. abs_tol <= 0 selects the automatic target 1e-9 * scale.
BoundResult cutset_bound_quadrature(const NetworkConfig& cfg, double abs_tol = 0.0);

// Same integral through the closed-form antiderivative; refuses excluded
// alpha with an error directing callers to the quadrature path.
BoundResult cutset_bound_closed_form(const NetworkConfig& cfg);

// Asymptotic-regime constants.
double regime_constant_K1(double alpha);            // alpha in (2,3)
double regime_constant_K2(double alpha);            // alpha > 3
double regime_constant_K3(double alpha, double d);  // alpha > 3

// Leading-order asymptote for one regime case. Case I uses
// pi nu R^2 W log(s_R); with second_order_case1 it adds the constant term
// (3/2)(alpha-2) inside the bracket.
double regime_asymptote_value(const NetworkConfig& cfg, RegimeCase c,
                              bool second_order_case1 = false);

// Classifies, then evaluates the matching asymptote. Propagates the
// ambiguity error when s lands in the dead band.
BoundResult regime_asymptote(const NetworkConfig& cfg,
                             double threshold = kDefaultRegimeThreshold,
                             double dead_band = kDefaultRegimeDeadBand,
                             bool second_order_case1 = false);

}  // namespace cutcap
