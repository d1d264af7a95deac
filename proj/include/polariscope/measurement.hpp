#pragma once

#include <cstdint>
#include <vector>

#include "polariscope/semiclassical.hpp"
#include "polariscope/species.hpp"

namespace polariscope {

// Probe laser parameters.  The detuning is referenced to the f' = f+1
// line, positive = blue.
struct ProbeParams {
  double power = 0.0;       // P, watts
  double detuning = 0.0;    // rad/s
  double efficiency = 1.0;  // eta in [0, 1]
  double pol_angle = 0.0;   // phi_p, radians (input linear polarization vs x)

  void validate() const;
};

// Measurement-chain constants.  hbar is kept out of the stored numbers:
// scattering_strength holds S*hbar^2 (W^2) and meas_strength holds
// M*hbar^2 (1/s), so that F_z expressed in units of hbar plugs in
// directly.  The SI values follow by dividing by hbar^2.
struct MeasurementParams {
  double scattering_strength = 0.0;  // S * hbar^2, W^2
  double shot_noise = 0.0;           // Delta zeta^2, W^2/Hz
  double meas_strength = 0.0;        // M * hbar^2, 1/s
  double scat_rate = 0.0;            // 1/tau_s, 1/s
};

// Photon energy of the probe, hbar*omega = h c / lambda0.
double photon_energy(const AtomSpecies& species);

// S * hbar^2 = [I_p sigma0 (Gamma/4) sum_f' alpha^(1)/(alpha0 Delta)]^2, W^2.
double scattering_strength(const AtomSpecies& species, const CloudParams& cloud,
                           const ProbeParams& probe);

// Optical shot noise Delta zeta^2 = 2 hbar omega P, W^2/Hz.
double shot_noise(const AtomSpecies& species, const ProbeParams& probe);

// Photon scattering rate 1/tau_s = (I sigma0 / hbar omega) (Gamma/4 sum)^2, 1/s.
double scattering_rate(const AtomSpecies& species, const ProbeParams& probe,
                       const CloudParams& cloud);

// Full parameter set; evaluates M through both S/Delta-zeta^2 and the
// (1/2) tau_s^-1 sigma0/A routes and throws ConsistencyError if they
// disagree beyond 1e-9 relative.
MeasurementParams measurement_strength(const AtomSpecies& species,
                                       const CloudParams& cloud,
                                       const ProbeParams& probe);

// A simulated photocurrent record y_k with
//   y_k dt = eta sqrt(M) fz_true dt + sqrt(eta) dW_k,
// fz_true in units of hbar, M the hbar-scaled measurement strength.
struct PhotocurrentRecord {
  double dt = 0.0;
  std::uint64_t seed = 0;
  double fz_true = 0.0;
  std::vector<double> samples;

  double duration() const { return dt * static_cast<double>(samples.size()); }
};

// Deterministic per (seed, stream); stream selects an independent
// substream so ensemble members can run in parallel and still agree
// with a serial run bit-exactly.  noiseless = true suppresses the
// Wiener increments (variance-0 test mode).
PhotocurrentRecord simulate_photocurrent(const MeasurementParams& m_params,
                                         double fz_true, double eta, double dt,
                                         double duration, std::uint64_t seed,
                                         std::uint64_t stream = 0,
                                         bool noiseless = false);

// Filter state after processing a record prefix.
struct FilterState {
  double estimate = 0.0;  // hbar units
  double variance = 0.0;  // hbar^2 units
  double elapsed = 0.0;   // seconds
};

// Recursive least-squares / Kalman fit of a constant F_z to the record.
// The variance recursion reproduces v(tau) = v0 / (1 + eta v0 M tau)
// exactly for any step partition.  Output has one state per sample,
// preceded by the tau = 0 prior state.
std::vector<FilterState> filter_estimate(const PhotocurrentRecord& record,
                                         double prior_var,
                                         const MeasurementParams& m_params,
                                         double eta);

// Closed-form conditional variance.
double conditional_variance(double prior_var, double eta, double meas_strength,
                            double tau);

struct SqueezingResult {
  double snr2 = 0.0;  // eta <dFz^2>_0 M tau
  double w = 1.0;     // 1 / (1 + SNR^2)
  bool validity_warning = false;  // tau > 0.1 tau_s
};

// SNR^2 and squeezing W for measurement time tau, computed through both
// the eta <dFz^2>_0 M tau and eta OD (f/4)(tau/tau_s) expressions.
// Requires the F || x geometry (theta = pi/2, phi = 0); other
// orientations are rejected.
SqueezingResult snr_squeezing(const AtomSpecies& species, const CloudParams& cloud,
                              const ProbeParams& probe, double tau,
                              const SpinOrientation& orient = {1.5707963267948966,
                                                               0.0});

}  // namespace polariscope
