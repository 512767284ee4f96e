#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cutcap/runners.hpp"

namespace {

using cutcap::NetworkConfig;

struct CommonOpts {
  double alpha = 4.0;
  double nu = 1.0;
  double radius = 100.0;
  double power_over_nw = 1.0;
  double bandwidth = 1000.0;
  double d = 1.198;

  NetworkConfig config() const {
    NetworkConfig cfg;
    cfg.alpha = alpha;
    cfg.nu = nu;
    cfg.R = radius;
    cfg.N = 1.0;
    cfg.W = bandwidth;
    cfg.P = power_over_nw * cfg.N * cfg.W;
    cfg.d = d;
    return cfg;
  }
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--alpha", o.alpha, "path-loss exponent (> 2)")
      ->capture_default_str();
  sub->add_option("--nu", o.nu, "node density, nodes/m^2")->capture_default_str();
  sub->add_option("--radius", o.radius, "cut radius R, m")->capture_default_str();
  sub->add_option("--power-over-nw", o.power_over_nw, "P/(NW), dimensionless")
      ->capture_default_str();
  sub->add_option("--bandwidth", o.bandwidth, "bandwidth W, Hz")
      ->capture_default_str();
  sub->add_option("--d", o.d, "critical percolation radius at unit density")
      ->capture_default_str();
  sub->set_config("--config", "", "key = value configuration file");
}

void print_summary(const cutcap::run::json& j) {
  std::cout << j.dump(2) << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cut-set capacity bounds for Poisson wireless networks"};
  app.require_subcommand(1);

  // bound
  auto* bound = app.add_subcommand(
      "bound", "evaluate the capacity bound at one configuration");
  CommonOpts bound_opts;
  add_common(bound, bound_opts);
  double bound_tol = 0.0;
  std::string bound_out;
  bound->add_option("--tol", bound_tol,
                    "absolute quadrature tolerance, bits/s (0 = automatic)")
      ->capture_default_str();
  bound->add_option("--out", bound_out, "output directory for bound.json");
  bound->callback([&] {
    std::optional<std::filesystem::path> out;
    if (!bound_out.empty()) out = bound_out;
    print_summary(cutcap::run::run_bound(bound_opts.config(), bound_tol, out));
  });

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "evaluate the bound over a grid of one parameter");
  CommonOpts sweep_opts;
  add_common(sweep, sweep_opts);
  std::string sweep_param;
  std::vector<double> sweep_grid;
  std::string sweep_out;
  sweep->add_option("--parameter", sweep_param, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"P_over_NW", "nu", "R", "alpha", "W"}));
  sweep->add_option("--grid", sweep_grid, "strictly increasing grid values")
      ->required()
      ->expected(-1);
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->callback([&] {
    cutcap::run::SweepSpec spec;
    spec.base = sweep_opts.config();
    spec.parameter = sweep_param;
    spec.grid = sweep_grid;
    print_summary(cutcap::run::run_sweep(spec, sweep_out));
  });

  // figure2
  auto* fig = app.add_subcommand(
      "figure2", "bound vs P/(NW) curve with matching asymptotes");
  CommonOpts fig_opts;
  add_common(fig, fig_opts);
  double fig_lo = 1e-4, fig_hi = 0.0;
  int fig_ppd = 60;
  std::string fig_out;
  fig->add_option("--grid-lo", fig_lo, "lowest P/(NW)")->capture_default_str();
  fig->add_option("--grid-hi", fig_hi, "highest P/(NW) (0 = automatic)")
      ->capture_default_str();
  fig->add_option("--points-per-decade", fig_ppd, "grid density")
      ->capture_default_str();
  fig->add_option("--out", fig_out, "output directory")->required();
  fig->callback([&] {
    print_summary(cutcap::run::run_figure2(fig_opts.alpha, fig_out,
                                           fig_opts.config(), fig_lo, fig_hi,
                                           fig_ppd));
  });

  // montecarlo
  auto* mc = app.add_subcommand(
      "montecarlo", "simulate the MIMO/MISO/Jensen bound chain");
  CommonOpts mc_opts;
  mc_opts.radius = 5.0;
  add_common(mc, mc_opts);
  std::uint64_t mc_trials = 10, mc_draws = 100, mc_seed = 1;
  double mc_trunc = 0.0;
  std::string mc_fading = "rayleigh", mc_out;
  mc->add_option("--trials", mc_trials, "independent geometry trials")
      ->capture_default_str();
  mc->add_option("--draws", mc_draws, "fading draws per trial")
      ->capture_default_str();
  mc->add_option("--truncation", mc_trunc,
                 "transmitter truncation radius, m (0 = 9R)")
      ->capture_default_str();
  mc->add_option("--fading", mc_fading, "fading model")
      ->check(CLI::IsMember({"rayleigh", "uniform_phase"}))
      ->capture_default_str();
  mc->add_option("--seed", mc_seed, "master RNG seed")->capture_default_str();
  mc->add_option("--out", mc_out, "output directory")->required();
  mc->callback([&] {
    const auto fading = mc_fading == "rayleigh"
                            ? cutcap::mc::FadingModel::rayleigh
                            : cutcap::mc::FadingModel::uniform_phase;
    print_summary(cutcap::run::run_montecarlo(mc_opts.config(), mc_trials,
                                              mc_draws, mc_trunc, fading,
                                              mc_seed, mc_out));
  });

  // percolation
  auto* perc = app.add_subcommand(
      "percolation", "continuum percolation experiments");
  perc->require_subcommand(1);
  cutcap::run::PercolationParams pp;
  std::uint64_t perc_seed = 1;
  std::string perc_out;

  auto add_perc_common = [&](CLI::App* sub) {
    sub->add_option("--nu", pp.nu, "node density, nodes/m^2")
        ->capture_default_str();
    sub->add_option("--trials", pp.trials, "trials per estimate")
        ->capture_default_str();
    sub->add_option("--seed", perc_seed, "master RNG seed")
        ->capture_default_str();
    sub->add_option("--out", perc_out, "output directory")->required();
    sub->set_config("--config", "", "key = value configuration file");
  };

  auto* thr = perc->add_subcommand(
      "threshold", "bisect the critical connection distance");
  add_perc_common(thr);
  thr->add_option("--box-side", pp.box_side, "crossing box side, m")
      ->capture_default_str();
  thr->add_option("--tol", pp.tol, "bisection tolerance, m")
      ->capture_default_str();
  thr->callback([&] {
    print_summary(cutcap::run::run_percolation("threshold", pp, perc_seed,
                                               perc_out));
  });

  auto* dec = perc->add_subcommand(
      "decay", "origin-to-box connection probability vs box size");
  add_perc_common(dec);
  dec->add_option("--k", pp.k, "scaled connection distance x sqrt(nu)")
      ->capture_default_str();
  dec->add_option("--m-grid", pp.m_grid, "box half-sides, m")
      ->expected(-1)
      ->capture_default_str();
  dec->callback([&] {
    print_summary(cutcap::run::run_percolation("decay", pp, perc_seed,
                                               perc_out));
  });

  auto* vac = perc->add_subcommand(
      "vacant_loop", "probability of a vacant loop in an annulus");
  add_perc_common(vac);
  vac->add_option("--k", pp.k, "scaled connection distance x sqrt(nu)")
      ->capture_default_str();
  vac->add_option("--radius", pp.inner_radius, "annulus inner radius R, m")
      ->capture_default_str();
  vac->add_option("--width", pp.width,
                  "annulus width, m (0 = calibrated default)")
      ->capture_default_str();
  vac->callback([&] {
    print_summary(cutcap::run::run_percolation("vacant_loop", pp, perc_seed,
                                               perc_out));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const cutcap::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const cutcap::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const cutcap::io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
