#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "cutcap/config.hpp"
#include "cutcap/errors.hpp"
#include "cutcap/ppp.hpp"

// Monte Carlo validation of the capacity bound chain
//   mimo <= miso_sum <= jensen <= analytic integral bound
// on sampled networks: receivers in the strip-emptied disk, transmitters in a
// truncated outer annulus.
namespace cutcap::mc {

enum class FadingModel { rayleigh, uniform_phase };

const char* fading_name(FadingModel m);

struct ChannelMatrix {
  Eigen::MatrixXcd gains;  // rows = receivers, cols = transmitters
  std::vector<Vec2> tx_positions;
  std::vector<Vec2> rx_positions;
  double alpha = 4.0;
};

struct CapacityEstimate {
  double mean = 0.0;       // nats/s
  double std_error = 0.0;  // nats/s
  std::uint64_t trials = 0;
  std::string units_note = "nats/s";
};

// Entries r_ij^{-alpha/2} h_ij, h per the fading model, drawn column-major.
// Coincident tx/rx points raise degenerate_geometry_error.
ChannelMatrix build_channel(const PointSet& tx, const PointSet& rx, double alpha,
                            FadingModel fading, std::uint64_t seed);

// W log det(I + (P/NW) H H*) via Cholesky on the smaller Gram form.
double mimo_capacity(const ChannelMatrix& ch, const NetworkConfig& cfg);

// W sum_i log(1 + (P/NW) sum_j |H_ij|^2).
double miso_sum_capacity(const ChannelMatrix& ch, const NetworkConfig& cfg);

// Fading-free geometric value W sum_i log(1 + (P/NW) sum_j r_ij^{-alpha}).
double jensen_geometry_bound(const PointSet& tx, const PointSet& rx,
                             const NetworkConfig& cfg);

// Q = (P/NW) sum_j |x_j - rx_point|^{-alpha} for one realization.
double received_snr(const Vec2& rx_point, const PointSet& tx,
                    const NetworkConfig& cfg);

// Analytic mean of received_snr over the truncated annulus nu-PPP:
// nu * (P/NW) * integral over the annulus [R, T] of |x - p|^{-alpha},
// rx_point at distance (R - r) from the center.
double truncated_campbell_mean(const NetworkConfig& cfg, double r,
                               double truncation_radius);

// Fraction of the short-range SNR unaccounted for by truncating the
// transmitter region at T: ((T-R) sqrt(nu) / d)^{2-alpha}.
double truncation_tail_fraction(const NetworkConfig& cfg, double truncation_radius);

struct DrawRecord {
  std::uint32_t trial = 0;
  std::uint32_t draw = 0;
  double mimo_nats = 0.0;
  double miso_nats = 0.0;
  double jensen_nats = 0.0;
};

struct CutsetEstimates {
  CapacityEstimate mimo;
  CapacityEstimate miso;
  CapacityEstimate jensen;
  std::uint64_t fading_draws = 0;
  std::uint64_t hadamard_violations = 0;  // per-draw mimo > miso events
  double integral_bound_nats = 0.0;       // analytic reference value
  double tail_fraction = 0.0;
};

inline constexpr double kDefaultTailCap = 1e-3;

// Shared-realization estimator: one geometry per trial, fading_draws channel
// draws per trial, capacities for every p_over_nw value computed from the
// same draws. Estimates are returned in the order of p_over_nw_values.
// MIMO/MISO standard errors are cluster-correct (per-trial means) when
// trials > 1 and per-draw otherwise; jensen aggregates per trial.
std::vector<CutsetEstimates> estimate_expected_cutset_grid(
    const NetworkConfig& cfg, const std::vector<double>& p_over_nw_values,
    std::uint64_t trials, std::uint64_t fading_draws, double truncation_radius,
    FadingModel fading, std::uint64_t seed, double tail_cap = kDefaultTailCap,
    std::vector<DrawRecord>* records = nullptr);

CutsetEstimates estimate_expected_cutset(const NetworkConfig& cfg,
                                         std::uint64_t trials,
                                         std::uint64_t fading_draws,
                                         double truncation_radius,
                                         FadingModel fading, std::uint64_t seed,
                                         double tail_cap = kDefaultTailCap,
                                         std::vector<DrawRecord>* records = nullptr);

}  // namespace cutcap::mc
