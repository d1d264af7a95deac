#pragma once

#include <array>

#include "polariscope/species.hpp"
#include "polariscope/spin.hpp"

namespace polariscope {

// Helicity index q in {-1, 0, +1} maps to array slot q + 1.
inline constexpr int kNumHelicities = 3;

// Ground<-excited dipole matrices D_q, (2f+1) x (2f'+1), in units of
// the reduced element <j||d||j'>.  Entries are real in the
// Condon-Shortley convention and obey the selection rule m = m' + q.
struct DipoleBlock {
  HalfInt f, fprime;
  std::array<Matrix, kNumHelicities> d;  // index q+1

  const Matrix& q(int qv) const { return d[qv + 1]; }
};

// Components A_{q,q'} = P_f d_q P_{f'} d^dag_{q'} P_f of the
// polarizability dyad, each (2f+1) x (2f+1), in units of <j||d||j'>^2.
struct PolarizabilityDyad {
  HalfInt f, fprime;
  std::array<std::array<Matrix, kNumHelicities>, kNumHelicities> a;

  const Matrix& qq(int qv, int qpv) const { return a[qv + 1][qpv + 1]; }
};

// One irreducible tensor component T^(j)_m acting on the ground
// manifold.
struct TensorOperator {
  int rank = 0;  // j in {0, 1, 2}
  int m = 0;     // component, |m| <= rank
  Matrix matrix;
};

// Normalized irreducible coefficients alpha^(j)_{f,f'} / alpha_0 for
// ranks 0, 1, 2.  All three vanish unless f' in {f-1, f, f+1}.
struct IrreducibleCoefficients {
  HalfInt f, fprime;
  std::array<double, 3> alpha_norm{0.0, 0.0, 0.0};
};

// Dimensionless hyperfine reduction factor
//   <f||d||f'> / <j||d||j'> = (-1)^{f'+j+i+1} sqrt((2f'+1)(2j+1)) {1 j j'; i f' f}.
// Returns 0 for levels that do not couple.
double reduced_element_factor(const AtomSpecies& species, HalfInt f, HalfInt fprime);

// Wigner-Eckart dipole matrices for the f -> f' transition.  A
// forbidden pair yields all-zero blocks.
DipoleBlock dipole_block(const AtomSpecies& species, HalfInt f, HalfInt fprime);

// Polarizability dyad built directly from the dipole blocks.
PolarizabilityDyad polarizability_dyad(const AtomSpecies& species, HalfInt f,
                                       HalfInt fprime);

// Rank-j projection of the dyad:
//   T^(j)_m = sum_{q,q'} d_q d^dag_{q'} <1,q; 1,q' | j,m>,
// returned for m = -j..j, in units of <j||d||j'>^2.
std::array<TensorOperator, 5> project_dyad_onto_rank(const PolarizabilityDyad& dyad,
                                                     int rank);

// Closed-form irreducible tensor operator built from spin matrices and
// the alpha^(j) coefficients, in units of alpha_0.
TensorOperator irreducible_tensor_operator(HalfInt f, HalfInt fprime,
                                           const AtomSpecies& species, int rank,
                                           int m);

// Closed-form normalized coefficients (the Kronecker-delta expressions
// over f' = f-1, f, f+1 with the |6j|^2 prefactor).
IrreducibleCoefficients alpha_coefficients(const AtomSpecies& species, HalfInt f,
                                           HalfInt fprime);

// Coefficients extracted numerically from the dyad projection by
// matching against the spin-operator closed forms.  Independent route;
// must agree with alpha_coefficients.
IrreducibleCoefficients alpha_coefficients_from_dyad(const AtomSpecies& species,
                                                     HalfInt f, HalfInt fprime);

// State-independent polarizability scale alpha_0 = 3 eps0 hbar Gamma lambda0^3 / 8 pi^2,
// in SI units.
double alpha_zero(const AtomSpecies& species);

// alpha_0 expressed in units of <j||d||j'>^2, i.e. (2j+1)/(2j'+1).
// Converts dyad-route matrices into the alpha_0 normalization used by
// the closed forms.
double alpha_zero_dipole_units(const AtomSpecies& species);

// Sum over excited levels of alpha^(rank)_{f,f'} / (alpha_0 * Delta_{f,f'}),
// in 1/(rad/s).  Throws std::domain_error when the probe sits exactly
// on a resonance.
double alpha_sum_over_detuning(const AtomSpecies& species, int rank,
                               double probe_detuning);

}  // namespace polariscope
