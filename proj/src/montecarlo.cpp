#include "cutcap/montecarlo.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "cutcap/bound.hpp"
#include "cutcap/quadrature.hpp"
#include "cutcap/rng.hpp"
#include "cutcap/stats.hpp"

namespace cutcap::mc {

const char* fading_name(FadingModel m) {
  return m == FadingModel::rayleigh ? "rayleigh" : "uniform_phase";
}

namespace {

// S_ij = r_ij^{-alpha/2}, receivers on rows. alpha = 4 short-circuits the pow.
Eigen::MatrixXd scale_matrix(const std::vector<Vec2>& tx,
                             const std::vector<Vec2>& rx, double alpha) {
  Eigen::MatrixXd S(static_cast<Eigen::Index>(rx.size()),
                    static_cast<Eigen::Index>(tx.size()));
  const double e = -alpha / 4.0;
  for (Eigen::Index j = 0; j < S.cols(); ++j) {
    const Vec2 t = tx[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
      const double r2 = dist2(rx[static_cast<std::size_t>(i)], t);
      if (r2 == 0.0)
        throw degenerate_geometry_error("coincident tx/rx points (zero distance)");
      S(i, j) = alpha == 4.0 ? 1.0 / r2 : std::pow(r2, e);
    }
  }
  return S;
}

void fill_fading(Eigen::MatrixXcd& H, const Eigen::MatrixXd& S, FadingModel fading,
                 Rng& rng) {
  H.resize(S.rows(), S.cols());
  if (fading == FadingModel::rayleigh) {
    for (Eigen::Index j = 0; j < S.cols(); ++j)
      for (Eigen::Index i = 0; i < S.rows(); ++i)
        H(i, j) = S(i, j) * rng.complex_normal();
  } else {
    for (Eigen::Index j = 0; j < S.cols(); ++j)
      for (Eigen::Index i = 0; i < S.rows(); ++i)
        H(i, j) = S(i, j) * rng.unit_phase();
  }
}

// log det(I + c G) for Hermitian positive semidefinite G (lower triangle).
double logdet_i_plus(const Eigen::MatrixXcd& G, double c) {
  Eigen::MatrixXcd M = c * G;
  M.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXcd, Eigen::Lower> llt(M);
  if (llt.info() != Eigen::Success)
    throw numerical_error("Cholesky factorization lost positive definiteness");
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

}  // namespace

ChannelMatrix build_channel(const PointSet& tx, const PointSet& rx, double alpha,
                            FadingModel fading, std::uint64_t seed) {
  if (!(alpha > 2.0)) throw validation_error("alpha must be > 2");
  ChannelMatrix ch;
  ch.tx_positions = tx.points;
  ch.rx_positions = rx.points;
  ch.alpha = alpha;
  const Eigen::MatrixXd S = scale_matrix(ch.tx_positions, ch.rx_positions, alpha);
  Rng rng(seed);
  fill_fading(ch.gains, S, fading, rng);
  return ch;
}

double mimo_capacity(const ChannelMatrix& ch, const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.P == 0.0) return 0.0;
  const Eigen::Index rows = ch.gains.rows(), cols = ch.gains.cols();
  if (rows == 0 || cols == 0) return 0.0;
  // single receiver: log det collapses to the miso sum; reuse its code path
  // so the two sides agree to the last bit
  if (rows == 1) return miso_sum_capacity(ch, cfg);
  const Eigen::Index n = std::min(rows, cols);
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
  if (rows <= cols)
    G.selfadjointView<Eigen::Lower>().rankUpdate(ch.gains);
  else
    G.selfadjointView<Eigen::Lower>().rankUpdate(ch.gains.adjoint().eval());
  return cfg.W * logdet_i_plus(G, cfg.p_over_nw());
}

double miso_sum_capacity(const ChannelMatrix& ch, const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.P == 0.0) return 0.0;
  const double c = cfg.p_over_nw();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ch.gains.rows(); ++i)
    sum += std::log1p(c * ch.gains.row(i).squaredNorm());
  return cfg.W * sum;
}

double jensen_geometry_bound(const PointSet& tx, const PointSet& rx,
                             const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.P == 0.0) return 0.0;
  const double c = cfg.p_over_nw();
  double sum = 0.0;
  for (const Vec2& r : rx.points) {
    double q = 0.0;
    for (const Vec2& t : tx.points) {
      const double r2 = dist2(r, t);
      if (r2 == 0.0)
        throw degenerate_geometry_error("coincident tx/rx points (zero distance)");
      q += std::pow(r2, -cfg.alpha / 2.0);
    }
    sum += std::log1p(c * q);
  }
  return cfg.W * sum;
}

double received_snr(const Vec2& rx_point, const PointSet& tx,
                    const NetworkConfig& cfg) {
  cfg.validate();
  double q = 0.0;
  for (const Vec2& t : tx.points) {
    const double r2 = dist2(rx_point, t);
    if (r2 == 0.0)
      throw degenerate_geometry_error("transmitter coincides with the receiver");
    q += std::pow(r2, -cfg.alpha / 2.0);
  }
  return cfg.p_over_nw() * q;
}

double truncated_campbell_mean(const NetworkConfig& cfg, double r,
                               double truncation_radius) {
  cfg.validate();
  if (!(r > 0.0) || !(r <= cfg.R))
    throw validation_error("receiver distance r must satisfy 0 < r <= R");
  if (!(truncation_radius > cfg.R))
    throw validation_error("truncation radius must exceed R");
  const double a = cfg.R - r;  // receiver's distance from the center
  auto angular = [&](double rho) {
    auto f = [&](double phi) {
      const double r2 = rho * rho + a * a - 2.0 * rho * a * std::cos(phi);
      return std::pow(r2, -cfg.alpha / 2.0);
    };
    return 2.0 * integrate_adaptive(f, 0.0, M_PI, 0.0, 1e-11).value;
  };
  auto radial = [&](double rho) { return rho * angular(rho); };
  const QuadResult q =
      integrate_adaptive(radial, cfg.R, truncation_radius, 0.0, 1e-10);
  if (!q.converged)
    throw numerical_error("Campbell integral did not converge", q.value);
  return cfg.nu * cfg.p_over_nw() * q.value;
}

double truncation_tail_fraction(const NetworkConfig& cfg, double truncation_radius) {
  cfg.validate();
  if (!(truncation_radius > cfg.R))
    throw validation_error("truncation radius must exceed R");
  return std::pow((truncation_radius - cfg.R) * std::sqrt(cfg.nu) / cfg.d,
                  2.0 - cfg.alpha);
}

std::vector<CutsetEstimates> estimate_expected_cutset_grid(
    const NetworkConfig& cfg, const std::vector<double>& p_over_nw_values,
    std::uint64_t trials, std::uint64_t fading_draws, double truncation_radius,
    FadingModel fading, std::uint64_t seed, double tail_cap,
    std::vector<DrawRecord>* records) {
  cfg.validate();
  if (p_over_nw_values.empty())
    throw validation_error("need at least one P/(NW) value");
  for (double c : p_over_nw_values)
    if (!(c >= 0.0)) throw validation_error("P/(NW) must be >= 0");
  if (trials < 1) throw validation_error("trials must be >= 1");
  if (fading_draws < 1) throw validation_error("fading_draws must be >= 1");

  const double tail = truncation_tail_fraction(cfg, truncation_radius);
  if (tail > tail_cap)
    throw truncation_error(
        "truncation tail fraction " + std::to_string(tail) + " exceeds cap " +
            std::to_string(tail_cap) + "; enlarge the truncation radius",
        tail);

  const double r0 = cfg.short_range_r();
  const double mean_rx = cfg.nu * M_PI * (cfg.R - r0) * (cfg.R - r0);
  const double mean_tx =
      cfg.nu * M_PI *
      (truncation_radius * truncation_radius - cfg.R * cfg.R);
  if (mean_rx * mean_tx > 4e8)
    throw validation_error(
        "expected channel matrix exceeds desk scale; reduce R, nu, or the "
        "truncation radius");

  const std::size_t np = p_over_nw_values.size();
  std::vector<std::vector<double>> jensen_trials(np),
      mimo_trial_means(np), miso_trial_means(np);
  std::vector<std::vector<double>> mimo_draws(np), miso_draws(np);
  for (std::size_t pi = 0; pi < np; ++pi) {
    jensen_trials[pi].reserve(trials);
    mimo_trial_means[pi].reserve(trials);
    miso_trial_means[pi].reserve(trials);
    mimo_draws[pi].reserve(trials * fading_draws);
    miso_draws[pi].reserve(trials * fading_draws);
  }
  std::vector<std::uint64_t> violations(np, 0);

  const Region disk = Region::disk({0.0, 0.0}, cfg.R);
  const Region annulus = Region::annulus({0.0, 0.0}, cfg.R, truncation_radius);

  Eigen::MatrixXcd H, G, M;
  Eigen::VectorXd row2;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed_for(seed, trial);
    const PointSet rx = enforce_empty_strip(
        sample_ppp(disk, cfg.nu, seed_for(trial_seed, 0)), cfg.R, r0);
    const PointSet tx = sample_ppp(annulus, cfg.nu, seed_for(trial_seed, 1));
    const Eigen::Index nr = static_cast<Eigen::Index>(rx.points.size());
    const Eigen::Index nt = static_cast<Eigen::Index>(tx.points.size());

    Eigen::MatrixXd S;
    Eigen::VectorXd geo_q;
    if (nr > 0 && nt > 0) {
      S = scale_matrix(tx.points, rx.points, cfg.alpha);
      geo_q = S.array().square().matrix().rowwise().sum();
    }

    for (std::size_t pi = 0; pi < np; ++pi) {
      double jensen = 0.0;
      if (nr > 0 && nt > 0)
        for (Eigen::Index i = 0; i < nr; ++i)
          jensen += std::log1p(p_over_nw_values[pi] * geo_q[i]);
      jensen_trials[pi].push_back(cfg.W * jensen);
    }

    std::vector<std::vector<double>> draw_mimo(np), draw_miso(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
      draw_mimo[pi].reserve(fading_draws);
      draw_miso[pi].reserve(fading_draws);
    }

    for (std::uint64_t draw = 0; draw < fading_draws; ++draw) {
      if (nr == 0 || nt == 0) {
        for (std::size_t pi = 0; pi < np; ++pi) {
          draw_mimo[pi].push_back(0.0);
          draw_miso[pi].push_back(0.0);
        }
        continue;
      }
      Rng rng(seed_for(trial_seed, 2 + draw));
      fill_fading(H, S, fading, rng);
      const Eigen::Index n = std::min(nr, nt);
      G.resize(n, n);
      G.setZero();
      if (nr <= nt)
        G.selfadjointView<Eigen::Lower>().rankUpdate(H);
      else
        G.selfadjointView<Eigen::Lower>().rankUpdate(H.adjoint().eval());
      row2 = H.rowwise().squaredNorm();

      for (std::size_t pi = 0; pi < np; ++pi) {
        const double c = p_over_nw_values[pi];
        double mimo = 0.0, miso = 0.0;
        if (c > 0.0) {
          double s = 0.0;
          for (Eigen::Index i = 0; i < nr; ++i) s += std::log1p(c * row2[i]);
          miso = cfg.W * s;
          if (nr == 1) {
            mimo = miso;  // single receiver: log det equals the miso sum
          } else {
            M = c * G;
            M.diagonal().array() += 1.0;
            Eigen::LLT<Eigen::MatrixXcd, Eigen::Lower> llt(M);
            if (llt.info() != Eigen::Success)
              throw numerical_error(
                  "Cholesky factorization lost positive definiteness");
            mimo = cfg.W * 2.0 *
                   llt.matrixLLT().diagonal().real().array().log().sum();
          }
        }
        if (mimo > miso) ++violations[pi];
        draw_mimo[pi].push_back(mimo);
        draw_miso[pi].push_back(miso);
        if (records && pi == 0)
          records->push_back({static_cast<std::uint32_t>(trial),
                              static_cast<std::uint32_t>(draw), mimo, miso,
                              jensen_trials[0][trial]});
      }
    }

    for (std::size_t pi = 0; pi < np; ++pi) {
      mimo_trial_means[pi].push_back(mean_of(draw_mimo[pi]));
      miso_trial_means[pi].push_back(mean_of(draw_miso[pi]));
      mimo_draws[pi].insert(mimo_draws[pi].end(), draw_mimo[pi].begin(),
                            draw_mimo[pi].end());
      miso_draws[pi].insert(miso_draws[pi].end(), draw_miso[pi].begin(),
                            draw_miso[pi].end());
    }
  }

  std::vector<CutsetEstimates> out(np);
  for (std::size_t pi = 0; pi < np; ++pi) {
    CutsetEstimates& e = out[pi];
    NetworkConfig cfg_p = cfg;
    cfg_p.P = p_over_nw_values[pi] * cfg.N * cfg.W;
    e.integral_bound_nats = cutset_bound_quadrature(cfg_p).value_nats_s;
    e.tail_fraction = tail;
    e.fading_draws = fading_draws;
    e.hadamard_violations = violations[pi];

    e.jensen.mean = mean_of(jensen_trials[pi]);
    e.jensen.std_error = std_error_of_mean(jensen_trials[pi]);
    e.jensen.trials = trials;

    // Cluster-correct errors: per-trial means when trials > 1 (draws within a
    // trial share geometry), per-draw spread for a single trial.
    e.mimo.mean = mean_of(mimo_trial_means[pi]);
    e.miso.mean = mean_of(miso_trial_means[pi]);
    e.mimo.std_error = trials > 1 ? std_error_of_mean(mimo_trial_means[pi])
                                  : std_error_of_mean(mimo_draws[pi]);
    e.miso.std_error = trials > 1 ? std_error_of_mean(miso_trial_means[pi])
                                  : std_error_of_mean(miso_draws[pi]);
    e.mimo.trials = trials;
    e.miso.trials = trials;
  }
  return out;
}

CutsetEstimates estimate_expected_cutset(const NetworkConfig& cfg,
                                         std::uint64_t trials,
                                         std::uint64_t fading_draws,
                                         double truncation_radius,
                                         FadingModel fading, std::uint64_t seed,
                                         double tail_cap,
                                         std::vector<DrawRecord>* records) {
  return estimate_expected_cutset_grid(cfg, {cfg.p_over_nw()}, trials,
                                       fading_draws, truncation_radius, fading,
                                       seed, tail_cap, records)[0];
}

}  // namespace cutcap::mc
