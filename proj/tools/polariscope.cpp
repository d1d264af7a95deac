// polariscope: decomposition tables, Stokes trajectory simulation,
// detuning scans, stochastic photocurrent simulation and squeezing
// curves, emitted as CSV data files with a JSON manifest sidecar.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polariscope/config.hpp"
#include "polariscope/errors.hpp"
#include "polariscope/measurement.hpp"
#include "polariscope/polarizability.hpp"
#include "polariscope/semiclassical.hpp"

using json = nlohmann::json;
using namespace polariscope;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int thread_cap() {
  int cap = 0;
  if (const char* env = std::getenv("POLARISCOPE_THREADS")) {
    cap = std::atoi(env);
  }
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(cap, 1);
}

struct Manifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<std::string> output_paths;
  json extra = json::object();

  void write(const std::string& path) const {
    json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["seed"] = seed;
    j["output_paths"] = output_paths;
    j["tool_version"] = POLARISCOPE_VERSION;
    j["timestamp"] = timestamp();
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
};

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  for (size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << fmt(row[i]);
    }
    out << "\n";
  }
}

// Least-squares slope of log|y| vs log x.
std::optional<double> loglog_slope(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  if (x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(std::abs(x[i]));
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_decompose(const ExperimentConfig& cfg, const std::string& out_prefix,
                  const std::string& config_path,
                  const std::optional<std::string>& spin_override) {
  const AtomSpecies& sp = cfg.species;
  std::vector<std::vector<double>> rows;
  double worst_residual = 0.0;
  for (const ExcitedLevel& lvl : sp.excited_levels) {
    const auto closed = alpha_coefficients(sp, sp.ground_f, lvl.fprime);
    const auto dyad = polarizability_dyad(sp, sp.ground_f, lvl.fprime);
    const double conv = 1.0 / alpha_zero_dipole_units(sp);
    double residual = 0.0;
    for (int rank = 0; rank <= 2; ++rank) {
      const auto proj = project_dyad_onto_rank(dyad, rank);
      for (int m = -rank; m <= rank; ++m) {
        const auto op = irreducible_tensor_operator(sp.ground_f, lvl.fprime, sp,
                                                    rank, m);
        residual = std::max(residual, (conv * proj[m + rank].matrix - op.matrix)
                                          .cwiseAbs()
                                          .maxCoeff());
      }
    }
    worst_residual = std::max(worst_residual, residual);
    rows.push_back({lvl.fprime.value(), closed.alpha_norm[0],
                    closed.alpha_norm[1], closed.alpha_norm[2], residual});
  }
  if (worst_residual > 1e-12) {
    std::cerr << "internal-consistency failure: dyad/closed-form residual "
              << worst_residual << " exceeds 1e-12\n";
    return kExitInternal;
  }

  const std::string csv = out_prefix + "_decompose.csv";
  write_csv(csv, {"fprime", "alpha0_norm", "alpha1_norm", "alpha2_norm",
                  "residual_norm"},
            rows);

  Manifest manifest{"decompose", config_path};
  manifest.output_paths = {csv};
  manifest.extra["alpha_zero_si"] = alpha_zero(sp);
  manifest.extra["max_residual"] = worst_residual;
  if (spin_override) {
    // Operator-structure report for an arbitrary ground spin: largest
    // dyad-projection element of each rank, maximized over coupled
    // excited manifolds.  Rank 2 vanishes identically for f = 1/2.
    const HalfInt f = HalfInt::parse(*spin_override);
    AtomSpecies synthetic = sp;
    synthetic.ground_f = f;
    synthetic.nuclear_spin = f - synthetic.ground_j;
    const double conv = 1.0 / alpha_zero_dipole_units(synthetic);
    json norms = json::object();
    for (int rank = 0; rank <= 2; ++rank) {
      double norm = 0.0;
      for (int dtw = -2; dtw <= 2; dtw += 2) {
        const HalfInt fp = HalfInt::from_twice(f.twice() + dtw);
        if (!triangle_ok(synthetic.nuclear_spin, synthetic.excited_j, fp)) {
          continue;
        }
        const auto proj =
            project_dyad_onto_rank(polarizability_dyad(synthetic, f, fp), rank);
        for (int m = -rank; m <= rank; ++m) {
          norm = std::max(norm,
                          conv * proj[m + rank].matrix.cwiseAbs().maxCoeff());
        }
      }
      norms["rank" + std::to_string(rank)] = norm;
    }
    manifest.extra["spin_override"] = *spin_override;
    manifest.extra["operator_norms"] = norms;
  }
  manifest.write(out_prefix + "_decompose.manifest.json");
  return 0;
}

int cmd_trajectory(const ExperimentConfig& cfg, const std::string& out_prefix,
                   const std::string& config_path, const std::string& path_name,
                   const std::optional<std::string>& measure, int samples) {
  PathSpec path;
  path.kind = path_name == "xz" ? PathKind::XZ_PLANE : PathKind::XY_PLANE;
  path.samples = samples > 0 ? samples : cfg.simulation.samples;

  const TrajectoryResult traj = simulate_trajectory(cfg.species, cfg.cloud,
                                                    cfg.probe.detuning, path);
  std::vector<std::vector<double>> rows;
  double sy_peak = 0.0, sz_peak = 0.0;
  for (const auto& s : traj) {
    rows.push_back({s.path_parameter, s.sy_norm, s.sz_norm});
    sy_peak = std::max(sy_peak, std::abs(s.sy_norm));
    sz_peak = std::max(sz_peak, std::abs(s.sz_norm));
  }

  const std::string csv = out_prefix + "_trajectory.csv";
  write_csv(csv, {"path_parameter", "sy_norm", "sz_norm"}, rows);

  Manifest manifest{"trajectory", config_path};
  manifest.output_paths = {csv};
  manifest.extra["path"] = path_name;
  manifest.extra["sy_peak"] = sy_peak;
  manifest.extra["sz_peak"] = sz_peak;
  if (measure) {
    manifest.extra["measure"] = *measure;
    manifest.extra["measured_peak"] = *measure == "sy" ? sy_peak : sz_peak;
  }
  manifest.write(out_prefix + "_trajectory.manifest.json");
  return 0;
}

int cmd_scan(const ExperimentConfig& cfg, const std::string& out_prefix,
             const std::string& config_path, const std::string& from_text,
             const std::string& to_text, int points, bool log_spacing) {
  const double from = parse_quantity(from_text, "frequency");
  const double to = parse_quantity(to_text, "frequency");
  if (points < 1) throw std::invalid_argument("scan: --points must be >= 1");

  std::vector<double> detunings;
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : double(k) / (points - 1);
    if (log_spacing) {
      if (from <= 0.0 || to <= 0.0) {
        throw std::invalid_argument("scan: --log requires a positive range");
      }
      detunings.push_back(from * std::pow(to / from, t));
    } else {
      detunings.push_back(from + (to - from) * t);
    }
  }
  // Resonance check up front so the error can list every offending
  // point.  Points within half a natural linewidth of a hyperfine line
  // are outside the dispersive model's validity.
  std::vector<std::string> on_resonance;
  for (double d : detunings) {
    for (const ExcitedLevel& lvl : cfg.species.excited_levels) {
      if (std::abs(cfg.species.detuning_from_level(d, lvl)) <
          0.5 * cfg.species.linewidth) {
        on_resonance.push_back(fmt(d / (2.0 * std::numbers::pi)) + " Hz (f'=" +
                               lvl.fprime.str() + ")");
      }
    }
  }
  if (!on_resonance.empty()) {
    std::cerr << "scan range hits atomic resonances at:";
    for (const auto& s : on_resonance) std::cerr << " " << s;
    std::cerr << "\n";
    return kExitUsage;
  }

  // Scan points are independent; split across the POLARISCOPE_THREADS cap.
  const int n_threads =
      std::min<int>(thread_cap(), static_cast<int>(detunings.size()));
  std::vector<DetuningScanPoint> results(detunings.size());
  std::vector<std::future<void>> workers;
  std::atomic<size_t> cursor{0};
  for (int t = 0; t < n_threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (size_t i = cursor.fetch_add(1); i < detunings.size();
           i = cursor.fetch_add(1)) {
        results[i] = detuning_scan(cfg.species, cfg.cloud, {detunings[i]},
                                   cfg.simulation.samples)[0];
      }
    }));
  }
  for (auto& w : workers) w.get();

  std::vector<std::vector<double>> rows;
  std::vector<double> xs, vec_peaks, ten_peaks;
  for (const auto& p : results) {
    rows.push_back({p.detuning, p.vector_peak, p.tensor_peak});
    xs.push_back(p.detuning);
    vec_peaks.push_back(p.vector_peak);
    ten_peaks.push_back(p.tensor_peak);
  }

  const std::string csv = out_prefix + "_scan.csv";
  write_csv(csv, {"detuning_radps", "vector_peak", "tensor_peak"}, rows);

  Manifest manifest{"scan", config_path};
  manifest.output_paths = {csv};
  manifest.extra["points"] = points;
  manifest.extra["log_spacing"] = log_spacing;
  if (auto s = loglog_slope(xs, vec_peaks)) manifest.extra["vector_slope"] = *s;
  if (auto s = loglog_slope(xs, ten_peaks)) manifest.extra["tensor_slope"] = *s;
  manifest.write(out_prefix + "_scan.manifest.json");
  return 0;
}

int cmd_photocurrent(const ExperimentConfig& cfg, const std::string& out_prefix,
                     const std::string& config_path, std::optional<double> fz,
                     std::optional<std::uint64_t> seed_flag) {
  const std::uint64_t seed = seed_flag.value_or(cfg.simulation.seed);
  const MeasurementParams mp =
      measurement_strength(cfg.species, cfg.cloud, cfg.probe);
  const double prior_var =
      cfg.cloud.n_atoms * cfg.species.ground_f.value() / 2.0;

  double fz_true;
  if (fz) {
    fz_true = *fz;
  } else {
    // Default trial: F_z drawn from the coherent-spin-state prior.
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> prior(0.0, std::sqrt(prior_var));
    fz_true = prior(engine);
  }

  const PhotocurrentRecord record = simulate_photocurrent(
      mp, fz_true, cfg.probe.efficiency, cfg.simulation.dt,
      cfg.simulation.duration, seed);
  const auto states =
      filter_estimate(record, prior_var, mp, cfg.probe.efficiency);

  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < record.samples.size(); ++k) {
    const FilterState& s = states[k + 1];
    rows.push_back({s.elapsed, record.samples[k], s.estimate, s.variance,
                    conditional_variance(prior_var, cfg.probe.efficiency,
                                         mp.meas_strength, s.elapsed)});
  }

  const std::string csv = out_prefix + "_photocurrent.csv";
  write_csv(csv, {"t", "y", "estimate", "variance", "variance_closed_form"},
            rows);

  Manifest manifest{"photocurrent", config_path, seed};
  manifest.output_paths = {csv};
  manifest.extra["fz_true"] = fz_true;
  manifest.extra["meas_strength"] = mp.meas_strength;
  manifest.extra["prior_variance"] = prior_var;
  manifest.write(out_prefix + "_photocurrent.manifest.json");
  return 0;
}

int cmd_squeeze(const ExperimentConfig& cfg, const std::string& out_prefix,
                const std::string& config_path, const std::string& tau_grid) {
  // Grid spec: either "start:stop:points" or a comma-separated list,
  // entries with time-unit suffixes.
  std::vector<double> taus;
  if (tau_grid.find(':') != std::string::npos) {
    std::stringstream ss(tau_grid);
    std::string start_s, stop_s, points_s;
    std::getline(ss, start_s, ':');
    std::getline(ss, stop_s, ':');
    std::getline(ss, points_s);
    const double start = parse_quantity(start_s, "time");
    const double stop = parse_quantity(stop_s, "time");
    const int points = std::stoi(points_s);
    if (points < 1) throw std::invalid_argument("tau grid needs >= 1 points");
    for (int k = 0; k < points; ++k) {
      const double t = points == 1 ? 0.0 : double(k) / (points - 1);
      taus.push_back(start + (stop - start) * t);
    }
  } else {
    std::stringstream ss(tau_grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      taus.push_back(parse_quantity(item, "time"));
    }
  }
  if (taus.empty()) throw std::invalid_argument("empty tau grid");

  const MeasurementParams mp =
      measurement_strength(cfg.species, cfg.cloud, cfg.probe);
  std::vector<std::vector<double>> rows;
  std::vector<double> warn_taus;
  for (double tau : taus) {
    const SqueezingResult r = snr_squeezing(cfg.species, cfg.cloud, cfg.probe, tau);
    rows.push_back({tau, r.snr2, r.w, tau * mp.scat_rate});
    if (r.validity_warning) warn_taus.push_back(tau);
  }

  const std::string csv = out_prefix + "_squeeze.csv";
  write_csv(csv, {"tau", "snr2", "w", "tau_over_tau_s"}, rows);

  Manifest manifest{"squeeze", config_path};
  manifest.output_paths = {csv};
  manifest.extra["dual_route_check"] = "passed";  // snr_squeezing throws otherwise
  manifest.extra["tau_s"] = 1.0 / mp.scat_rate;
  if (!warn_taus.empty()) {
    json warnings = json::array();
    for (double t : warn_taus) {
      warnings.push_back("tau = " + fmt(t) +
                         " s exceeds 0.1 tau_s; small-time formulas degrade");
    }
    manifest.extra["warnings"] = warnings;
  }
  manifest.write(out_prefix + "_squeeze.manifest.json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Off-resonant probing of multilevel alkali atoms: polarizability "
               "decomposition, Stokes trajectories, detuning scans, photocurrent "
               "simulation and squeezing prediction"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_path;
  std::string out_prefix = "polariscope_out";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment configuration file")
        ->required();
    sub->add_option("--out", out_prefix, "output path prefix");
  };

  auto* decompose = app.add_subcommand(
      "decompose", "alpha^(j) coefficient table with dyad-vs-closed-form residuals");
  add_common(decompose);
  std::string spin_override;
  decompose->add_option("--spin", spin_override,
                        "report tensor operator-structure norms for this ground "
                        "spin (e.g. 1/2)");

  auto* trajectory =
      app.add_subcommand("trajectory", "adiabatic xz/xy path Stokes trajectories");
  add_common(trajectory);
  std::string path_name;
  std::string measure;
  int samples = 0;
  trajectory->add_option("--path", path_name, "path: xz or xy")
      ->required()
      ->check(CLI::IsMember({"xz", "xy"}));
  trajectory->add_option("--measure", measure, "annotated channel: sy or sz")
      ->check(CLI::IsMember({"sy", "sz"}));
  trajectory->add_option("--samples", samples, "path sample count");

  auto* scan = app.add_subcommand("scan", "vector/tensor peaks vs probe detuning");
  add_common(scan);
  std::string from_text, to_text;
  int points = 25;
  bool log_spacing = false;
  scan->add_option("--from", from_text, "start detuning (e.g. '150 MHz')")->required();
  scan->add_option("--to", to_text, "stop detuning")->required();
  scan->add_option("--points", points, "number of scan points");
  scan->add_flag("--log", log_spacing, "logarithmic spacing");

  auto* photocurrent = app.add_subcommand(
      "photocurrent", "seeded stochastic photocurrent with least-squares filter");
  add_common(photocurrent);
  double fz_value = 0.0;
  std::uint64_t seed_value = 0;
  auto* fz_opt =
      photocurrent->add_option("--fz", fz_value, "true F_z in hbar units");
  auto* seed_opt =
      photocurrent->add_option("--seed", seed_value, "override config seed");

  auto* squeeze = app.add_subcommand("squeeze", "SNR^2 and squeezing W vs tau");
  add_common(squeeze);
  std::string tau_grid;
  squeeze
      ->add_option("--tau-grid", tau_grid,
                   "'start:stop:points' (time suffixes) or comma list")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const ExperimentConfig cfg = load_experiment(config_path);
    if (decompose->parsed()) {
      return cmd_decompose(cfg, out_prefix, config_path,
                           spin_override.empty()
                               ? std::nullopt
                               : std::optional<std::string>(spin_override));
    }
    if (trajectory->parsed()) {
      if (samples < 0 || (trajectory->count("--samples") && samples < 2)) {
        std::cerr << "trajectory: --samples must be >= 2\n";
        return kExitUsage;
      }
      return cmd_trajectory(cfg, out_prefix, config_path, path_name,
                            measure.empty()
                                ? std::nullopt
                                : std::optional<std::string>(measure),
                            samples);
    }
    if (scan->parsed()) {
      return cmd_scan(cfg, out_prefix, config_path, from_text, to_text, points,
                      log_spacing);
    }
    if (photocurrent->parsed()) {
      return cmd_photocurrent(
          cfg, out_prefix, config_path,
          *fz_opt ? std::optional<double>(fz_value) : std::nullopt,
          *seed_opt ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
    }
    if (squeeze->parsed()) {
      return cmd_squeeze(cfg, out_prefix, config_path, tau_grid);
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal-consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
