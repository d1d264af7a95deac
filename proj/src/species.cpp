#include "polariscope/species.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polariscope {

double AtomSpecies::resonance_frequency() const {
  return 2.0 * std::numbers::pi * constants::c_light / wavelength;
}

void AtomSpecies::validate() const {
  if (linewidth <= 0.0) throw std::invalid_argument("species: linewidth must be > 0");
  if (wavelength <= 0.0) throw std::invalid_argument("species: wavelength must be > 0");
  if (excited_levels.empty()) {
    throw std::invalid_argument("species: at least one excited level required");
  }
  const HalfInt fp_min = nuclear_spin > excited_j ? nuclear_spin - excited_j
                                                  : excited_j - nuclear_spin;
  const HalfInt fp_max = nuclear_spin + excited_j;
  if (ground_f < (nuclear_spin > ground_j ? nuclear_spin - ground_j
                                          : ground_j - nuclear_spin) ||
      ground_f > nuclear_spin + ground_j) {
    throw std::invalid_argument("species: ground f outside [|i-j|, i+j]");
  }
  double prev = -1e308;
  bool has_reference = false;
  for (const ExcitedLevel& lvl : excited_levels) {
    if (lvl.fprime < fp_min || lvl.fprime > fp_max) {
      throw std::invalid_argument("species: excited level f' = " +
                                  lvl.fprime.str() + " outside [|i-j'|, i+j']");
    }
    if (lvl.offset <= prev) {
      throw std::invalid_argument("species: level offsets must be strictly increasing");
    }
    prev = lvl.offset;
    if (lvl.offset == 0.0) has_reference = true;
  }
  if (!has_reference) {
    throw std::invalid_argument("species: reference level (offset 0) missing");
  }
}

}  // namespace polariscope
