#include "polariscope/semiclassical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polariscope/errors.hpp"

namespace polariscope {

double GammaVector::norm() const {
  return std::sqrt(gx * gx + gy * gy + gz * gz);
}

double CloudParams::area() const { return std::numbers::pi * radius * radius; }

double CloudParams::depth() const { return length.value_or(2.0 * radius); }

double CloudParams::optical_depth(const AtomSpecies& species) const {
  return n_atoms * resonant_cross_section(species) / area();
}

double resonant_cross_section(const AtomSpecies& species) {
  return 3.0 * species.wavelength * species.wavelength / (2.0 * std::numbers::pi);
}

double gamma0(const AtomSpecies& species, const CloudParams& cloud) {
  if (cloud.n_atoms < 0.0 || cloud.radius <= 0.0) {
    throw std::invalid_argument("gamma0: cloud parameters must be positive");
  }
  const double od_route =
      (species.linewidth / 4.0) * cloud.optical_depth(species);

  // Definitional route: gamma0 = N g delta_t alpha0 / hbar with
  // g = omega0 / (2 eps0 V) and delta_t = L / c.
  const double g = species.resonance_frequency() /
                   (2.0 * constants::epsilon0 * cloud.volume());
  const double delta_t = cloud.depth() / constants::c_light;
  const double def_route =
      cloud.n_atoms * g * delta_t * alpha_zero(species) / constants::hbar;

  if (od_route != 0.0 &&
      std::abs(od_route - def_route) > 1e-12 * std::abs(od_route)) {
    throw ConsistencyError("gamma0 routes disagree: OD route " +
                           std::to_string(od_route) + " vs definitional " +
                           std::to_string(def_route));
  }
  return od_route;
}

GammaVector gamma_vector(const AtomSpecies& species, const CloudParams& cloud,
                         double probe_detuning, const SpinOrientation& orient) {
  const double g0 = gamma0(species, cloud);
  const CoherentSpinMoments mom = coherent_spin_moments(species.ground_f, orient);
  const double sum1 = alpha_sum_over_detuning(species, 1, probe_detuning);
  const double sum2 = alpha_sum_over_detuning(species, 2, probe_detuning);
  GammaVector g;
  g.gx = g0 * mom.quad_diff * sum2;
  g.gy = g0 * mom.quad_cross * sum2;
  g.gz = g0 * mom.fz_mean * sum1;
  return g;
}

StokesVector rotate_stokes_exact(const StokesVector& s, const GammaVector& g) {
  const double gamma = g.norm();
  if (gamma == 0.0) return s;

  const double nx = g.gx / gamma, ny = g.gy / gamma, nz = g.gz / gamma;
  const double c = std::cos(gamma), si = std::sin(gamma), k = 1.0 - c;

  StokesVector out;
  out.s0 = s.s0;
  out.sx = s.sx * (nx * nx * k + c) + s.sy * (nx * ny * k + nz * si) +
           s.sz * (nx * nz * k - ny * si);
  out.sy = s.sx * (ny * nx * k - nz * si) + s.sy * (ny * ny * k + c) +
           s.sz * (ny * nz * k + nx * si);
  out.sz = s.sx * (nz * nx * k + ny * si) + s.sy * (nz * ny * k - nx * si) +
           s.sz * (nz * nz * k + c);
  return out;
}

SmallAngleResult rotate_stokes_small(const StokesVector& s, const GammaVector& g) {
  SmallAngleResult res;
  res.large_angle = g.norm() >= 0.3;
  StokesVector& out = res.stokes;
  out.s0 = s.s0;
  // Second-order expansion of the exact rotation for an arbitrary input.
  out.sx = s.sx * (1.0 - 0.5 * (g.gz * g.gz + g.gy * g.gy)) +
           s.sy * (g.gz + 0.5 * g.gx * g.gy) + s.sz * (-g.gy + 0.5 * g.gx * g.gz);
  out.sy = s.sx * (-g.gz + 0.5 * g.gy * g.gx) +
           s.sy * (1.0 - 0.5 * (g.gx * g.gx + g.gz * g.gz)) +
           s.sz * (g.gx + 0.5 * g.gy * g.gz);
  out.sz = s.sx * (g.gy + 0.5 * g.gz * g.gx) +
           s.sy * (-g.gx + 0.5 * g.gz * g.gy) +
           s.sz * (1.0 - 0.5 * (g.gx * g.gx + g.gy * g.gy));
  return res;
}

std::vector<std::pair<double, SpinOrientation>> PathSpec::points() const {
  std::vector<std::pair<double, SpinOrientation>> pts;
  if (kind == PathKind::CUSTOM) {
    double t = 0.0;
    for (const SpinOrientation& o : custom_points) pts.emplace_back(t++, o);
    return pts;
  }
  if (samples < 2) throw std::invalid_argument("path needs at least 2 samples");
  pts.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = std::numbers::pi * k / (samples - 1);
    SpinOrientation o;
    if (kind == PathKind::XZ_PLANE) {
      o.theta = std::numbers::pi / 2.0 - t;  // pi/2 -> -pi/2
      o.phi = 0.0;
    } else {
      o.theta = std::numbers::pi / 2.0;
      o.phi = t;  // 0 -> pi
    }
    pts.emplace_back(t, o);
  }
  return pts;
}

TrajectoryResult simulate_trajectory(const AtomSpecies& species,
                                     const CloudParams& cloud,
                                     double probe_detuning,
                                     const PathSpec& path) {
  TrajectoryResult result;
  const StokesVector input = StokesVector::linear_x();
  for (const auto& [t, orient] : path.points()) {
    const GammaVector g = gamma_vector(species, cloud, probe_detuning, orient);
    const StokesVector out = rotate_stokes_exact(input, g);
    result.push_back({t, out.sy / input.sx, out.sz / input.sx});
  }
  return result;
}

std::vector<DetuningScanPoint> detuning_scan(const AtomSpecies& species,
                                             const CloudParams& cloud,
                                             const std::vector<double>& detunings,
                                             int samples_per_path) {
  std::vector<DetuningScanPoint> out;
  out.reserve(detunings.size());
  PathSpec xz{PathKind::XZ_PLANE, samples_per_path, {}};
  PathSpec xy{PathKind::XY_PLANE, samples_per_path, {}};
  for (double delta : detunings) {
    DetuningScanPoint p;
    p.detuning = delta;
    for (const auto& s : simulate_trajectory(species, cloud, delta, xz)) {
      p.vector_peak = std::max(p.vector_peak, std::abs(s.sy_norm));
    }
    for (const auto& s : simulate_trajectory(species, cloud, delta, xy)) {
      p.tensor_peak = std::max(p.tensor_peak, std::abs(s.sz_norm));
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace polariscope
