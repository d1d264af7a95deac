#pragma once

#include <optional>
#include <vector>

#include "polariscope/polarizability.hpp"
#include "polariscope/species.hpp"
#include "polariscope/spin.hpp"

namespace polariscope {

// Stokes-vector expectation values.  Inputs here are fully polarized,
// so sx^2 + sy^2 + sz^2 = s0^2 on entry; either photon-flux units or
// normalized with s0 = 1.
struct StokesVector {
  double s0 = 1.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  static StokesVector linear_x(double flux = 1.0) {
    return {flux, flux, 0.0, 0.0};
  }
};

// Rotation generator for the Stokes vector, radians.
struct GammaVector {
  double gx = 0.0;
  double gy = 0.0;
  double gz = 0.0;

  double norm() const;
};

// Atomic cloud geometry.  The optical depth is always recomputed from
// (n_atoms, radius, wavelength), never stored independently.
struct CloudParams {
  double n_atoms = 0.0;  // N
  double radius = 0.0;   // r, meters
  // Cloud depth along the probe; defaults to 2r (spherical cloud).
  std::optional<double> length;

  double area() const;                                  // A = pi r^2
  double depth() const;                                 // L
  double volume() const { return area() * depth(); }    // V = A L
  double optical_depth(const AtomSpecies& species) const;  // N sigma0 / A
};

// Resonant scattering cross section sigma0 = 3 lambda0^2 / 2 pi.
double resonant_cross_section(const AtomSpecies& species);

// On-resonance rotation scale gamma0 = (Gamma/4) OD, rad/s.  Computed
// through both the OD route and the definitional N g delta_t alpha0 /
// hbar route; throws ConsistencyError if they disagree.
double gamma0(const AtomSpecies& species, const CloudParams& cloud);

// Rotation vector for a probe detuned by probe_detuning (rad/s,
// referenced to the f' = f+1 line) scattering off a coherent spin
// state pointing along orient.
GammaVector gamma_vector(const AtomSpecies& species, const CloudParams& cloud,
                         double probe_detuning, const SpinOrientation& orient);

// Exact rotation of the Stokes vector about gamma (Rodrigues form);
// s0 unchanged, (sx,sy,sz) norm preserved.  gamma = 0 is the identity.
StokesVector rotate_stokes_exact(const StokesVector& s, const GammaVector& g);

// Second-order small-angle rotation.  Sets `large_angle` when the
// rotation magnitude exceeds the 0.3 rad validity guard.
struct SmallAngleResult {
  StokesVector stokes;
  bool large_angle = false;
};
SmallAngleResult rotate_stokes_small(const StokesVector& s, const GammaVector& g);

enum class PathKind { XZ_PLANE, XY_PLANE, CUSTOM };

// Adiabatic magnetization path traced by the holding field.
//   XZ_PLANE: theta pi/2 -> -pi/2 at phi = 0 (rotation about y)
//   XY_PLANE: phi 0 -> pi at theta = pi/2 (rotation about z)
struct PathSpec {
  PathKind kind = PathKind::XZ_PLANE;
  int samples = 200;
  std::vector<SpinOrientation> custom_points;

  std::vector<std::pair<double, SpinOrientation>> points() const;
};

struct TrajectorySample {
  double path_parameter = 0.0;  // radians along the path
  double sy_norm = 0.0;         // output S_y / input S_x
  double sz_norm = 0.0;         // output S_z / input S_x
};

using TrajectoryResult = std::vector<TrajectorySample>;

// Sweeps the magnetization along the path with the atomic state held
// fixed per sample (holding-field regime, no probe backaction) and
// records the normalized output Stokes components for an x-polarized
// input.
TrajectoryResult simulate_trajectory(const AtomSpecies& species,
                                     const CloudParams& cloud,
                                     double probe_detuning,
                                     const PathSpec& path);

struct DetuningScanPoint {
  double detuning = 0.0;     // rad/s
  double vector_peak = 0.0;  // max |sy_norm| over the xz path
  double tensor_peak = 0.0;  // max |sz_norm| over the xy path
};

std::vector<DetuningScanPoint> detuning_scan(const AtomSpecies& species,
                                             const CloudParams& cloud,
                                             const std::vector<double>& detunings,
                                             int samples_per_path = 200);

}  // namespace polariscope
