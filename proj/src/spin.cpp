#include "polariscope/spin.hpp"

#include <cmath>

namespace polariscope {

SpinOperatorSet spin_matrices(HalfInt f) {
  if (f.twice() < 0) throw std::domain_error("spin_matrices: f must be >= 0");
  const int dim = f.multiplicity();
  const double fv = f.value();

  SpinOperatorSet ops;
  ops.f = f;
  ops.dim = dim;
  ops.fx = Matrix::Zero(dim, dim);
  ops.fy = Matrix::Zero(dim, dim);
  ops.fz = Matrix::Zero(dim, dim);

  // Basis index k corresponds to m = f - k (descending m).
  for (int k = 0; k < dim; ++k) {
    ops.fz(k, k) = fv - k;
  }
  // Raising operator: <m+1| fx + i fy |m> = sqrt(f(f+1) - m(m+1)).
  for (int k = 1; k < dim; ++k) {
    const double m = fv - k;
    const double amp = std::sqrt(fv * (fv + 1.0) - m * (m + 1.0));
    ops.fx(k - 1, k) += 0.5 * amp;
    ops.fx(k, k - 1) += 0.5 * amp;
    ops.fy(k - 1, k) += std::complex<double>(0.0, -0.5) * amp;
    ops.fy(k, k - 1) += std::complex<double>(0.0, 0.5) * amp;
  }
  return ops;
}

Eigen::VectorXcd coherent_spin_state(const SpinOperatorSet& ops,
                                     const SpinOrientation& orient) {
  using namespace std::complex_literals;
  const int dim = ops.dim;

  // exp(-i fy theta) via the eigendecomposition of the Hermitian fy.
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops.fy);
  Eigen::VectorXcd phases(dim);
  for (int k = 0; k < dim; ++k) {
    phases(k) = std::exp(-1i * orient.theta * es.eigenvalues()(k));
  }
  Eigen::VectorXcd stretched = Eigen::VectorXcd::Zero(dim);
  stretched(0) = 1.0;  // |f, f> in descending-m order
  Eigen::VectorXcd psi = es.eigenvectors() *
                         (phases.asDiagonal() *
                          (es.eigenvectors().adjoint() * stretched));
  // exp(-i fz phi) is diagonal.
  for (int k = 0; k < dim; ++k) {
    psi(k) *= std::exp(-1i * orient.phi * ops.fz(k, k));
  }
  return psi;
}

CoherentSpinMoments coherent_spin_moments(HalfInt f, const SpinOrientation& orient) {
  const double fv = f.value();
  const double s2 = std::sin(orient.theta) * std::sin(orient.theta);
  CoherentSpinMoments m;
  m.fz_mean = fv * std::cos(orient.theta);
  m.quad_diff = fv * (fv - 0.5) * s2 * std::cos(2.0 * orient.phi);
  m.quad_cross = fv * (fv - 0.5) * s2 * std::sin(2.0 * orient.phi);
  return m;
}

}  // namespace polariscope
