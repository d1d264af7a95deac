#pragma once

#include <Eigen/Dense>

#include "polariscope/half_int.hpp"

namespace polariscope {

using Matrix = Eigen::MatrixXcd;

// Angular-momentum operator matrices for a single spin f, in units of
// hbar.  Basis order is descending m (m = f first), so fz's first
// diagonal entry is +f and the stretched state |f,f> is the first basis
// vector.
struct SpinOperatorSet {
  HalfInt f;
  int dim = 0;
  Matrix fx, fy, fz;

  Matrix f_plus() const { return fx + std::complex<double>(0, 1) * fy; }
  Matrix f_minus() const { return fx - std::complex<double>(0, 1) * fy; }
};

// Direction of the mean spin on the Bloch sphere (spherical angles:
// theta from +z, phi from +x in the xy plane).
struct SpinOrientation {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

// Moments of a coherent (stretched, rotated) spin state that enter the
// semiclassical rotation vector.
struct CoherentSpinMoments {
  double fz_mean = 0.0;     // <fz>, units hbar
  double quad_diff = 0.0;   // <fx^2 - fy^2>, units hbar^2
  double quad_cross = 0.0;  // <fx fy + fy fx>, units hbar^2
};

// Builds fx, fy, fz for spin f; f = 0 yields 1x1 zero matrices.
SpinOperatorSet spin_matrices(HalfInt f);

// Closed-form moments of |Psi(theta,phi)> = e^{-i fz phi} e^{-i fy theta} |f,f>:
//   <fz>            = f cos(theta)
//   <fx^2 - fy^2>   = f(f-1/2) sin^2(theta) cos(2 phi)
//   <fx fy + fy fx> = f(f-1/2) sin^2(theta) sin(2 phi)
CoherentSpinMoments coherent_spin_moments(HalfInt f, const SpinOrientation& orient);

// The rotated stretched state itself (first column of the rotation
// applied to |f,f>).  Used by cross-checks against the closed forms.
Eigen::VectorXcd coherent_spin_state(const SpinOperatorSet& ops,
                                     const SpinOrientation& orient);

}  // namespace polariscope
