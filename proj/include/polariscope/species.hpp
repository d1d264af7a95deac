#pragma once

#include <string>
#include <vector>

#include "polariscope/half_int.hpp"

namespace polariscope {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double h_planck = 6.62607015e-34;   // J s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m
inline constexpr double c_light = 299792458.0;       // m/s
}  // namespace constants

// One excited hyperfine level of the probed transition.  The offset is
// the line frequency relative to the reference line f' = f+1, in rad/s
// (negative for lower-lying levels).
struct ExcitedLevel {
  HalfInt fprime;
  double offset = 0.0;  // rad/s
};

// Atomic structure inputs for a single D-line transition of an alkali
// atom: spin quantum numbers, the excited hyperfine levels probed, the
// natural linewidth and the transition wavelength.
struct AtomSpecies {
  std::string name;
  HalfInt nuclear_spin;  // i
  HalfInt ground_j;      // j
  HalfInt excited_j;     // j'
  HalfInt ground_f;      // f, the probed ground manifold
  double linewidth = 0.0;   // Gamma, rad/s
  double wavelength = 0.0;  // lambda_0, meters
  std::vector<ExcitedLevel> excited_levels;  // ordered by increasing offset

  // omega_0 = 2 pi c / lambda_0
  double resonance_frequency() const;

  // Detuning Delta_{f,f'} of a probe detuned by delta (rad/s, relative
  // to the reference line) from the given excited level.
  double detuning_from_level(double probe_detuning, const ExcitedLevel& lvl) const {
    return probe_detuning - lvl.offset;
  }

  // Throws std::invalid_argument if quantum numbers or level offsets
  // are inconsistent.
  void validate() const;
};

}  // namespace polariscope
