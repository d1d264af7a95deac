#include "polariscope/measurement.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "polariscope/errors.hpp"
#include "polariscope/polarizability.hpp"

namespace polariscope {

void ProbeParams::validate() const {
  if (power <= 0.0) throw std::invalid_argument("probe: power must be > 0");
  if (efficiency < 0.0 || efficiency > 1.0) {
    throw std::invalid_argument("probe: efficiency must be in [0, 1]");
  }
}

double photon_energy(const AtomSpecies& species) {
  return constants::h_planck * constants::c_light / species.wavelength;
}

namespace {

// (Gamma/4) sum_f' alpha^(1) / (alpha0 Delta_{f,f'}), dimensionless.
double vector_coupling(const AtomSpecies& species, double probe_detuning) {
  return (species.linewidth / 4.0) *
         alpha_sum_over_detuning(species, 1, probe_detuning);
}

}  // namespace

double scattering_strength(const AtomSpecies& species, const CloudParams& cloud,
                           const ProbeParams& probe) {
  const double intensity = probe.power / cloud.area();
  const double base = intensity * resonant_cross_section(species) *
                      vector_coupling(species, probe.detuning);
  return base * base;
}

double shot_noise(const AtomSpecies& species, const ProbeParams& probe) {
  if (probe.power < 0.0) throw std::invalid_argument("shot_noise: power must be >= 0");
  return 2.0 * photon_energy(species) * probe.power;
}

double scattering_rate(const AtomSpecies& species, const ProbeParams& probe,
                       const CloudParams& cloud) {
  const double intensity = probe.power / cloud.area();
  const double coupling = vector_coupling(species, probe.detuning);
  return intensity * resonant_cross_section(species) / photon_energy(species) *
         coupling * coupling;
}

MeasurementParams measurement_strength(const AtomSpecies& species,
                                       const CloudParams& cloud,
                                       const ProbeParams& probe) {
  probe.validate();
  MeasurementParams p;
  p.scattering_strength = scattering_strength(species, cloud, probe);
  p.shot_noise = shot_noise(species, probe);
  p.scat_rate = scattering_rate(species, probe, cloud);

  const double ratio_route = p.scattering_strength / p.shot_noise;
  const double rate_route = 0.5 * p.scat_rate *
                            resonant_cross_section(species) / cloud.area();
  if (std::abs(ratio_route - rate_route) > 1e-9 * std::abs(ratio_route)) {
    throw ConsistencyError(
        "measurement strength routes disagree: S/shot = " +
        std::to_string(ratio_route) + ", rate route = " +
        std::to_string(rate_route));
  }
  p.meas_strength = ratio_route;
  return p;
}

namespace {

// splitmix64; used to derive independent substream seeds from (seed, stream).
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable Gaussian stream: mt19937_64 + Box-Muller.  Avoids the
// implementation-defined std::normal_distribution so records are
// reproducible bit-exactly for a given (seed, stream).
class GaussianStream {
public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 1))) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  double uniform() {
    return (engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  }
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

PhotocurrentRecord simulate_photocurrent(const MeasurementParams& m_params,
                                         double fz_true, double eta, double dt,
                                         double duration, std::uint64_t seed,
                                         std::uint64_t stream, bool noiseless) {
  if (dt <= 0.0) throw std::invalid_argument("simulate_photocurrent: dt must be > 0");
  if (duration < dt) {
    throw std::invalid_argument("simulate_photocurrent: duration must be >= dt");
  }
  const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
  const double drift = eta * std::sqrt(m_params.meas_strength) * fz_true;
  const double noise_scale = std::sqrt(eta) / std::sqrt(dt);

  PhotocurrentRecord rec;
  rec.dt = dt;
  rec.seed = seed;
  rec.fz_true = fz_true;
  rec.samples.resize(steps);

  GaussianStream rng(seed, stream);
  for (std::size_t k = 0; k < steps; ++k) {
    const double dw = noiseless ? 0.0 : rng.next();
    rec.samples[k] = drift + noise_scale * dw;
  }
  return rec;
}

double conditional_variance(double prior_var, double eta, double meas_strength,
                            double tau) {
  return prior_var / (1.0 + eta * prior_var * meas_strength * tau);
}

std::vector<FilterState> filter_estimate(const PhotocurrentRecord& record,
                                         double prior_var,
                                         const MeasurementParams& m_params,
                                         double eta) {
  if (prior_var <= 0.0) {
    throw std::invalid_argument("filter_estimate: prior variance must be > 0");
  }
  const double m = m_params.meas_strength;
  const double sqrt_m = std::sqrt(m);
  const double dt = record.dt;

  std::vector<FilterState> out;
  out.reserve(record.samples.size() + 1);
  FilterState state{0.0, prior_var, 0.0};
  out.push_back(state);

  // Information form: 1/v accumulates eta M dt per step, which makes the
  // recursion exactly partition-invariant.
  double inv_v = 1.0 / prior_var;
  for (double y : record.samples) {
    inv_v += eta * m * dt;
    const double v = 1.0 / inv_v;
    const double innovation = y * dt - eta * sqrt_m * state.estimate * dt;
    state.estimate += v * sqrt_m * innovation;
    state.variance = v;
    state.elapsed += dt;
    out.push_back(state);
  }
  return out;
}

SqueezingResult snr_squeezing(const AtomSpecies& species, const CloudParams& cloud,
                              const ProbeParams& probe, double tau,
                              const SpinOrientation& orient) {
  if (tau < 0.0) throw std::invalid_argument("snr_squeezing: tau must be >= 0");
  // A pure Faraday rotation photocurrent requires F || x; anything else
  // mixes in tensor terms and the closed forms below do not apply.
  if (std::abs(orient.theta - std::numbers::pi / 2.0) > 1e-9 ||
      std::abs(orient.phi) > 1e-9) {
    throw std::invalid_argument(
        "snr_squeezing: requires the F || x geometry (theta = pi/2, phi = 0); "
        "other orientations produce non-Faraday scattering terms");
  }
  probe.validate();

  const MeasurementParams mp = measurement_strength(species, cloud, probe);
  const double f = species.ground_f.value();
  const double prior_var = cloud.n_atoms * f / 2.0;  // <dFz^2>_0 in hbar^2

  const double route_a = probe.efficiency * prior_var * mp.meas_strength * tau;
  const double route_b = probe.efficiency * cloud.optical_depth(species) *
                         (f / 4.0) * tau * mp.scat_rate;
  if (route_a != 0.0 &&
      std::abs(route_a - route_b) > 1e-12 * std::abs(route_a)) {
    throw ConsistencyError("SNR^2 routes disagree: " + std::to_string(route_a) +
                           " vs " + std::to_string(route_b));
  }

  SqueezingResult res;
  res.snr2 = route_a;
  res.w = 1.0 / (1.0 + res.snr2);
  res.validity_warning = tau * mp.scat_rate > 0.1;
  return res;
}

}  // namespace polariscope
