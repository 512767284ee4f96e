#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutcap/bound.hpp"
#include "cutcap/config.hpp"
#include "cutcap/montecarlo.hpp"
#include "cutcap/percolation.hpp"

// CLI-facing runners: each executes one command, writes its data files, and
// returns the JSON summary it printed. Capacities are converted to bits/s
// here (nats / ln 2); everything below this layer stays in nats.
namespace cutcap::run {

using json = nlohmann::ordered_json;

inline constexpr double kLn2 = 0.69314718055994530942;

inline double to_bits(double nats) { return nats / kLn2; }

// Single-point evaluation: quadrature bound, closed form (or excluded-alpha
// notice), asymptote + regime (or ambiguity notice), SNR pair.
json run_bound(const NetworkConfig& cfg, double abs_tol,
               const std::optional<std::filesystem::path>& out_dir);

struct SweepSpec {
  NetworkConfig base;
  std::string parameter;      // one of P_over_NW | nu | R | alpha | W
  std::vector<double> grid;   // nonempty, strictly increasing
};

json run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir);

// Bound curve, matching asymptote, and SNR inset over a log grid of P/(NW).
// Canonical reproduction wants alpha in {2.5, 4}; other alpha are flagged.
json run_figure2(double alpha, const std::filesystem::path& out_dir,
                 const NetworkConfig& base, double grid_lo = 1e-4,
                 double grid_hi = 0.0 /* auto: 1e8 (alpha>3) or 1e4 */,
                 int points_per_decade = 60);

json run_montecarlo(const NetworkConfig& cfg, std::uint64_t trials,
                    std::uint64_t draws, double truncation,
                    mc::FadingModel fading, std::uint64_t seed,
                    const std::filesystem::path& out_dir);

struct PercolationParams {
  double nu = 1.0;
  double k = 0.9 * 1.198;        // scaled connection distance x * sqrt(nu)
  double box_side = 200.0;       // threshold experiment
  double inner_radius = 200.0;   // vacant_loop experiment (R, meters)
  double width = 0.0;            // vacant_loop annulus width; 0 = calibrated default
  std::vector<double> m_grid = {2, 4, 6, 8, 10};  // decay experiment
  std::uint64_t trials = 400;
  double tol = 0.02;             // threshold bisection, meters
};

json run_percolation(const std::string& subcommand, const PercolationParams& params,
                     std::uint64_t seed, const std::filesystem::path& out_dir);

// key = value configuration file; '#' starts a comment. Returned map feeds
// the CLI layer, where flags take precedence over file values.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

std::string iso8601_utc_now();

void write_json(const json& j, const std::filesystem::path& path);

}  // namespace cutcap::run
