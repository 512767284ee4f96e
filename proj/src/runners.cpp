#include "cutcap/runners.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cutcap/io.hpp"
#include "cutcap/rng.hpp"
#include "cutcap/specfun.hpp"

namespace cutcap::run {

namespace {

json config_json(const NetworkConfig& cfg) {
  json j;
  j["nu"] = cfg.nu;
  j["R"] = cfg.R;
  j["P"] = cfg.P;
  j["N"] = cfg.N;
  j["W"] = cfg.W;
  j["alpha"] = cfg.alpha;
  j["d"] = cfg.d;
  j["p_over_nw"] = cfg.p_over_nw();
  return j;
}

struct RegimeRow {
  std::string regime;      // name or "ambiguous:A|B"
  std::string asym_case;   // empty when ambiguous
  double asym_bits = 0.0;  // valid only when asym_case nonempty
  double s_long = 0.0;
  double s_short = 0.0;
};

RegimeRow classify_row(const NetworkConfig& cfg, double threshold,
                       double dead_band, bool second_order_case1) {
  RegimeRow row;
  const auto [s_short, s_long] = short_long_snr(cfg);
  row.s_short = s_short;
  row.s_long = s_long;
  try {
    const RegimeLabel label = classify_regime(cfg, threshold, dead_band);
    row.regime = regime_name(label.regime_case);
    row.asym_case = row.regime;
    row.asym_bits = to_bits(
        regime_asymptote_value(cfg, label.regime_case, second_order_case1));
  } catch (const ambiguous_regime_error& e) {
    row.regime = std::string("ambiguous:") + regime_name(e.candidate_a) + "|" +
                 regime_name(e.candidate_b);
  }
  return row;
}

}  // namespace

json run_bound(const NetworkConfig& cfg, double abs_tol,
               const std::optional<std::filesystem::path>& out_dir) {
  cfg.validate();
  json j;
  j["command"] = "bound";
  j["timestamp"] = iso8601_utc_now();
  j["config"] = config_json(cfg);

  const auto [s_short, s_long] = short_long_snr(cfg);
  j["s_short"] = s_short;
  j["s_long"] = s_long;

  const double abs_tol_nats = abs_tol > 0.0 ? abs_tol * kLn2 : 0.0;
  const BoundResult quad = cutset_bound_quadrature(cfg, abs_tol_nats);
  j["quadrature"]["bound_bits_s"] = to_bits(quad.value_nats_s);
  if (quad.quadrature_abs_tol)
    j["quadrature"]["achieved_abs_tol_bits_s"] = to_bits(*quad.quadrature_abs_tol);

  try {
    const BoundResult cf = cutset_bound_closed_form(cfg);
    j["closed_form"]["bound_bits_s"] = to_bits(cf.value_nats_s);
    const double denom = std::max(std::fabs(quad.value_nats_s), 1e-300);
    j["closed_form"]["rel_diff_vs_quadrature"] =
        std::fabs(cf.value_nats_s - quad.value_nats_s) / denom;
  } catch (const excluded_alpha_error& e) {
    j["closed_form"]["bound_bits_s"] = nullptr;
    j["closed_form"]["note"] = e.what();
  }

  const RegimeRow row = classify_row(cfg, kDefaultRegimeThreshold,
                                     kDefaultRegimeDeadBand, false);
  j["regime"] = row.regime;
  if (!row.asym_case.empty()) {
    j["asymptote"]["case"] = row.asym_case;
    j["asymptote"]["value_bits_s"] = row.asym_bits;
  } else {
    j["asymptote"]["case"] = nullptr;
    j["asymptote"]["note"] =
        "SNR scale falls inside the classification dead band";
  }

  if (out_dir) {
    write_json(j, *out_dir / "bound.json");
    j["files"] = {(*out_dir / "bound.json").string()};
  }
  return j;
}

json run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir) {
  static const std::vector<std::string> kParams = {"P_over_NW", "nu", "R",
                                                   "alpha", "W"};
  if (std::find(kParams.begin(), kParams.end(), spec.parameter) == kParams.end())
    throw validation_error("swept parameter must be one of P_over_NW, nu, R, "
                           "alpha, W");
  if (spec.grid.empty()) throw validation_error("sweep grid must be nonempty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (!(spec.grid[i] > spec.grid[i - 1]))
      throw validation_error("sweep grid must be strictly increasing");

  const std::filesystem::path csv_path = out_dir / "sweep.csv";
  std::ofstream csv = open_output(csv_path);
  csv << spec.parameter
      << ",quadrature_bits_s,closed_form_bits_s,asymptote_bits_s,"
         "asymptote_case,s_long,s_short,regime\n";

  for (double v : spec.grid) {
    NetworkConfig cfg = spec.base;
    if (spec.parameter == "P_over_NW")
      cfg.P = v * cfg.N * cfg.W;
    else if (spec.parameter == "nu")
      cfg.nu = v;
    else if (spec.parameter == "R")
      cfg.R = v;
    else if (spec.parameter == "alpha")
      cfg.alpha = v;
    else
      cfg.W = v;
    cfg.validate();

    const BoundResult quad = cutset_bound_quadrature(cfg);
    std::string cf_field;
    if (closed_form_alpha_valid(cfg.alpha))
      cf_field = fmt_g17(to_bits(cutset_bound_closed_form(cfg).value_nats_s));
    const RegimeRow row = classify_row(cfg, kDefaultRegimeThreshold,
                                       kDefaultRegimeDeadBand, false);
    csv << fmt_g17(v) << ',' << fmt_g17(to_bits(quad.value_nats_s)) << ','
        << cf_field << ','
        << (row.asym_case.empty() ? "" : fmt_g17(row.asym_bits)) << ','
        << row.asym_case << ',' << fmt_g17(row.s_long) << ','
        << fmt_g17(row.s_short) << ',' << row.regime << '\n';
  }
  csv.close();

  json j;
  j["command"] = "sweep";
  j["timestamp"] = iso8601_utc_now();
  j["parameter"] = spec.parameter;
  j["n_points"] = spec.grid.size();
  j["base_config"] = config_json(spec.base);
  j["files"] = {csv_path.string()};
  write_json(j, out_dir / "summary.json");
  return j;
}

json run_figure2(double alpha, const std::filesystem::path& out_dir,
                 const NetworkConfig& base, double grid_lo, double grid_hi,
                 int points_per_decade) {
  if (!(alpha > 2.0)) throw validation_error("alpha must be > 2");
  if (!(grid_lo > 0.0)) throw validation_error("grid_lo must be > 0");
  if (points_per_decade < 1)
    throw validation_error("points_per_decade must be >= 1");
  if (grid_hi == 0.0) grid_hi = alpha > 3.0 ? 1e8 : 1e4;
  if (!(grid_hi > grid_lo)) throw validation_error("grid_hi must exceed grid_lo");

  NetworkConfig cfg = base;
  cfg.alpha = alpha;
  const bool canonical = alpha == 2.5 || alpha == 4.0;

  const int n = static_cast<int>(
                    std::lround(points_per_decade * std::log10(grid_hi / grid_lo))) +
                1;

  const std::filesystem::path csv_path = out_dir / "figure2.csv";
  std::ofstream csv = open_output(csv_path);
  csv << "p_over_nw,bound_bits_s,asymptote_case,asymptote_bits_s,s_long,"
         "s_short,regime\n";

  json transitions = json::array();
  std::string prev_regime;
  for (int i = 0; i < n; ++i) {
    const double p =
        grid_lo * std::pow(10.0, static_cast<double>(i) / points_per_decade);
    cfg.P = p * cfg.N * cfg.W;
    cfg.validate();
    const BoundResult quad = cutset_bound_quadrature(cfg);
    const RegimeRow row =
        classify_row(cfg, kDefaultRegimeThreshold, 1.0, true);
    csv << fmt_g17(p) << ',' << fmt_g17(to_bits(quad.value_nats_s)) << ','
        << row.asym_case << ','
        << (row.asym_case.empty() ? "" : fmt_g17(row.asym_bits)) << ','
        << fmt_g17(row.s_long) << ',' << fmt_g17(row.s_short) << ','
        << row.regime << '\n';
    if (!prev_regime.empty() && row.regime != prev_regime) {
      json t;
      t["p_over_nw"] = p;
      t["from"] = prev_regime;
      t["to"] = row.regime;
      transitions.push_back(t);
    }
    prev_regime = row.regime;
  }
  csv.close();

  json j;
  j["command"] = "figure2";
  j["timestamp"] = iso8601_utc_now();
  j["alpha"] = alpha;
  j["canonical"] = canonical;
  j["grid"]["lo"] = grid_lo;
  j["grid"]["hi"] = grid_hi;
  j["grid"]["points_per_decade"] = points_per_decade;
  j["grid"]["n_points"] = n;
  j["base_config"] = config_json(base);
  j["transitions"] = transitions;
  j["files"] = {csv_path.string()};
  write_json(j, out_dir / "summary.json");
  return j;
}

json run_montecarlo(const NetworkConfig& cfg, std::uint64_t trials,
                    std::uint64_t draws, double truncation,
                    mc::FadingModel fading, std::uint64_t seed,
                    const std::filesystem::path& out_dir) {
  cfg.validate();
  const double T = truncation > 0.0 ? truncation : 9.0 * cfg.R;

  std::vector<mc::DrawRecord> records;
  const mc::CutsetEstimates est = mc::estimate_expected_cutset(
      cfg, trials, draws, T, fading, seed, mc::kDefaultTailCap, &records);

  const std::filesystem::path csv_path = out_dir / "draws.csv";
  std::ofstream csv = open_output(csv_path);
  csv << "trial,draw,mimo_nats,miso_nats,jensen_nats\n";
  for (const mc::DrawRecord& r : records)
    csv << r.trial << ',' << r.draw << ',' << fmt_g17(r.mimo_nats) << ','
        << fmt_g17(r.miso_nats) << ',' << fmt_g17(r.jensen_nats) << '\n';
  csv.close();

  auto estimate_json = [](const mc::CapacityEstimate& e) {
    json q;
    q["mean_bits_s"] = to_bits(e.mean);
    q["std_error_bits_s"] = to_bits(e.std_error);
    q["trials"] = e.trials;
    return q;
  };

  const double se_mj =
      std::hypot(est.miso.std_error, est.jensen.std_error);
  const double se_ji = est.jensen.std_error;
  const bool miso_le_jensen =
      est.miso.mean <= est.jensen.mean + 3.0 * se_mj;
  const bool jensen_le_integral =
      est.jensen.mean <= est.integral_bound_nats + 3.0 * se_ji;

  json j;
  j["command"] = "montecarlo";
  j["timestamp"] = iso8601_utc_now();
  j["config"] = config_json(cfg);
  j["fading"] = mc::fading_name(fading);
  j["trials"] = trials;
  j["fading_draws"] = draws;
  j["truncation_radius"] = T;
  j["tail_fraction"] = est.tail_fraction;
  j["seed"] = seed;
  j["estimates"]["mimo"] = estimate_json(est.mimo);
  j["estimates"]["miso"] = estimate_json(est.miso);
  j["estimates"]["jensen"] = estimate_json(est.jensen);
  j["integral_bound_bits_s"] = to_bits(est.integral_bound_nats);
  j["checks"]["mimo_le_miso_violations"] = est.hadamard_violations;
  j["checks"]["mimo_le_miso"] = est.hadamard_violations == 0 ? "PASS" : "FAIL";
  j["checks"]["miso_le_jensen"] = miso_le_jensen ? "PASS" : "FAIL";
  j["checks"]["jensen_le_integral"] = jensen_le_integral ? "PASS" : "FAIL";
  j["files"] = {csv_path.string()};
  write_json(j, out_dir / "summary.json");
  return j;
}

json run_percolation(const std::string& subcommand,
                     const PercolationParams& params, std::uint64_t seed,
                     const std::filesystem::path& out_dir) {
  if (!(params.nu > 0.0)) throw validation_error("nu must be > 0");
  if (!(params.k > 0.0)) throw validation_error("k must be > 0");
  const double root_nu = std::sqrt(params.nu);
  const double x = params.k / root_nu;

  json j;
  j["command"] = "percolation";
  j["subcommand"] = subcommand;
  j["timestamp"] = iso8601_utc_now();
  j["nu"] = params.nu;
  j["seed"] = seed;

  if (subcommand == "threshold") {
    std::vector<perc::ThresholdScanPoint> scan;
    const double d_est = perc::estimate_critical_radius(
        params.nu, params.box_side, params.trials, params.tol, seed, &scan);
    const std::filesystem::path csv_path = out_dir / "threshold_scan.csv";
    std::ofstream csv = open_output(csv_path);
    csv << "x_scaled,crossing_prob,std_err,trials\n";
    for (const auto& p : scan)
      csv << fmt_g17(p.x_scaled) << ',' << fmt_g17(p.crossing_prob) << ','
          << fmt_g17(p.std_err) << ',' << p.trials << '\n';
    csv.close();
    j["box_side"] = params.box_side;
    j["trials"] = params.trials;
    j["tol"] = params.tol;
    j["d_estimate"] = d_est;
    j["n_evaluations"] = scan.size();
    j["files"] = {csv_path.string()};
  } else if (subcommand == "decay") {
    const std::filesystem::path csv_path = out_dir / "decay.csv";
    std::ofstream csv = open_output(csv_path);
    csv << "m,prob,std_err\n";
    std::vector<double> ms, logps;
    bool warn = false;
    json rows = json::array();
    for (std::size_t i = 0; i < params.m_grid.size(); ++i) {
      const double m = params.m_grid[i];
      const ProbEstimate p = perc::origin_to_box_probability(
          params.nu, x, m, params.trials, seed_for(seed, i));
      warn = warn || p.supercritical_warning;
      csv << fmt_g17(m) << ',' << fmt_g17(p.value) << ',' << fmt_g17(p.std_error)
          << '\n';
      json r;
      r["m"] = m;
      r["prob"] = p.value;
      r["std_err"] = p.std_error;
      rows.push_back(r);
      if (p.value > 0.0) {
        ms.push_back(m);
        logps.push_back(std::log(p.value));
      }
    }
    csv.close();
    j["k"] = params.k;
    j["x"] = x;
    j["trials"] = params.trials;
    j["m_grid"] = params.m_grid;
    j["rows"] = rows;
    j["supercritical_warning"] = warn;
    if (ms.size() >= 2) {
      const LinearFit fit = linear_fit(ms, logps);
      j["fit"]["slope"] = fit.slope;
      j["fit"]["intercept"] = fit.intercept;
      j["fit"]["r_squared"] = fit.r_squared;
    } else {
      j["fit"] = nullptr;
    }
    j["files"] = {csv_path.string()};
  } else if (subcommand == "vacant_loop") {
    const double R = params.inner_radius;
    const double width = params.width > 0.0
                             ? params.width
                             : perc::default_loop_width(params.nu, R);
    perc::CrossingExperiment exp;
    exp.nu = params.nu;
    exp.R = R;
    exp.m = width;
    exp.x = x;
    exp.trials = params.trials;
    const ProbEstimate est = perc::vacant_loop_probability(exp, seed);
    j["inner_radius"] = R;
    j["width"] = width;
    j["k"] = params.k;
    j["x"] = x;
    j["trials"] = params.trials;
    j["vacant_loop_probability"] = est.value;
    j["std_error"] = est.std_error;
  } else {
    throw validation_error(
        "percolation subcommand must be threshold, decay, or vacant_loop");
  }

  write_json(j, out_dir / "summary.json");
  return j;
}

std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw validation_error("malformed config line " + std::to_string(lineno) +
                             ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw validation_error("empty key on config line " + std::to_string(lineno));
    out[key] = value;
  }
  return out;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed writing " + path.string());
}

}  // namespace cutcap::run
