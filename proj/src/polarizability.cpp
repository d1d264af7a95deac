#include "polariscope/polarizability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polariscope/wigner.hpp"

namespace polariscope {

using literals::operator""_hi;

double reduced_element_factor(const AtomSpecies& species, HalfInt f, HalfInt fprime) {
  const HalfInt i = species.nuclear_spin;
  const HalfInt j = species.ground_j;
  const HalfInt jp = species.excited_j;
  const double six = wigner6j(1_hi, j, jp, i, fprime, f);
  if (six == 0.0) return 0.0;
  const int phase_twice = (fprime + j + i).twice() + 2;  // f'+j+i+1, doubled
  const double sign = (phase_twice / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::sqrt(double(fprime.multiplicity()) * j.multiplicity()) * six;
}

DipoleBlock dipole_block(const AtomSpecies& species, HalfInt f, HalfInt fprime) {
  DipoleBlock block;
  block.f = f;
  block.fprime = fprime;
  const int dim_g = f.multiplicity();
  const int dim_e = fprime.multiplicity();
  for (auto& m : block.d) m = Matrix::Zero(dim_g, dim_e);

  const double red = reduced_element_factor(species, f, fprime);
  if (red == 0.0) return block;

  // <f,m| d_q |f',m'> = <f,m | 1,q; f',m'> <f||d||f'>, nonzero for m = m' + q.
  for (int q = -1; q <= 1; ++q) {
    for (int row = 0; row < dim_g; ++row) {
      const HalfInt m = f - HalfInt::integer(row);
      for (int col = 0; col < dim_e; ++col) {
        const HalfInt mp = fprime - HalfInt::integer(col);
        if (m != mp + HalfInt::integer(q)) continue;
        block.d[q + 1](row, col) =
            clebsch_gordan(1_hi, HalfInt::integer(q), fprime, mp, f, m) * red;
      }
    }
  }
  return block;
}

PolarizabilityDyad polarizability_dyad(const AtomSpecies& species, HalfInt f,
                                       HalfInt fprime) {
  const DipoleBlock block = dipole_block(species, f, fprime);
  PolarizabilityDyad dyad;
  dyad.f = f;
  dyad.fprime = fprime;
  // d^dag_{q'} is the q'-spherical component of the raising vector
  // operator: (-1)^{q'} (d_{-q'})^T for the real Condon-Shortley blocks.
  for (int q = -1; q <= 1; ++q) {
    for (int qp = -1; qp <= 1; ++qp) {
      const double sign = qp % 2 == 0 ? 1.0 : -1.0;
      dyad.a[q + 1][qp + 1] = sign * block.q(q) * block.q(-qp).transpose();
    }
  }
  return dyad;
}

std::array<TensorOperator, 5> project_dyad_onto_rank(const PolarizabilityDyad& dyad,
                                                     int rank) {
  if (rank < 0 || rank > 2) throw std::domain_error("rank must be 0, 1 or 2");
  const int dim = dyad.f.multiplicity();
  std::array<TensorOperator, 5> out;
  for (int m = -rank; m <= rank; ++m) {
    TensorOperator& t = out[m + rank];
    t.rank = rank;
    t.m = m;
    t.matrix = Matrix::Zero(dim, dim);
    for (int q = -1; q <= 1; ++q) {
      for (int qp = -1; qp <= 1; ++qp) {
        const double cg =
            clebsch_gordan(1_hi, HalfInt::integer(q), 1_hi, HalfInt::integer(qp),
                           HalfInt::integer(rank), HalfInt::integer(m));
        if (cg != 0.0) t.matrix += cg * dyad.qq(q, qp);
      }
    }
  }
  return out;
}

IrreducibleCoefficients alpha_coefficients(const AtomSpecies& species, HalfInt f,
                                           HalfInt fprime) {
  IrreducibleCoefficients out;
  out.f = f;
  out.fprime = fprime;
  const double fv = f.value();

  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  if (fprime == f - 1_hi) {
    c0 = 2.0 * fv - 1.0;
    c1 = -(2.0 * fv - 1.0) / fv;
    c2 = 1.0 / fv;
  } else if (fprime == f) {
    c0 = 2.0 * fv + 1.0;
    c1 = -(2.0 * fv + 1.0) / (fv * (fv + 1.0));
    c2 = -(2.0 * fv + 1.0) / (fv * (fv + 1.0));
  } else if (fprime == f + 1_hi) {
    c0 = 2.0 * fv + 3.0;
    c1 = (2.0 * fv + 3.0) / (fv + 1.0);
    c2 = 1.0 / (fv + 1.0);
  } else {
    return out;  // Kronecker deltas select f' in {f-1, f, f+1}
  }

  const double six = wigner6j(1_hi, species.ground_j, species.excited_j,
                              species.nuclear_spin, fprime, f);
  const double ratio = double(species.excited_j.multiplicity()) /
                       double(species.ground_j.multiplicity());
  const double prefactor = ratio * ratio * six * six;
  out.alpha_norm = {prefactor * c0, prefactor * c1, prefactor * c2};
  return out;
}

namespace {

// Spherical ladder components f_sph_{+/-} = -/+ (fx +/- i fy) / sqrt(2).
Matrix f_sph(const SpinOperatorSet& ops, int sign) {
  const double norm = -sign / std::numbers::sqrt2;
  return norm * (ops.fx + std::complex<double>(0, sign) * ops.fy);
}

// Closed-form operator structure for T^(j)_m with the alpha coefficient
// set to 1 (spin-operator forms).
Matrix tensor_structure(const SpinOperatorSet& ops, int rank, int m) {
  const int dim = ops.dim;
  const double fv = ops.f.value();
  const Matrix id = Matrix::Identity(dim, dim);
  switch (rank) {
    case 0:
      return -id / std::sqrt(3.0);
    case 1:
      if (m == 0) return ops.fz / std::numbers::sqrt2;
      return f_sph(ops, m) / std::numbers::sqrt2;
    case 2:
      switch (m) {
        case 0:
          return -(3.0 * ops.fz * ops.fz - fv * (fv + 1.0) * id) / std::sqrt(6.0);
        case 1:
          return -std::numbers::sqrt2 * f_sph(ops, +1) * (ops.fz + 0.5 * id);
        case -1:
          return -std::numbers::sqrt2 * f_sph(ops, -1) * (ops.fz - 0.5 * id);
        case 2:
          return -f_sph(ops, +1) * f_sph(ops, +1);
        case -2:
          return -f_sph(ops, -1) * f_sph(ops, -1);
      }
      break;
  }
  throw std::domain_error("tensor component out of range");
}

}  // namespace

TensorOperator irreducible_tensor_operator(HalfInt f, HalfInt fprime,
                                           const AtomSpecies& species, int rank,
                                           int m) {
  if (rank < 0 || rank > 2 || std::abs(m) > rank) {
    throw std::domain_error("tensor component out of range");
  }
  const SpinOperatorSet ops = spin_matrices(f);
  const IrreducibleCoefficients coeffs = alpha_coefficients(species, f, fprime);
  TensorOperator t;
  t.rank = rank;
  t.m = m;
  t.matrix = coeffs.alpha_norm[rank] * tensor_structure(ops, rank, m);
  return t;
}

IrreducibleCoefficients alpha_coefficients_from_dyad(const AtomSpecies& species,
                                                     HalfInt f, HalfInt fprime) {
  IrreducibleCoefficients out;
  out.f = f;
  out.fprime = fprime;

  const PolarizabilityDyad dyad = polarizability_dyad(species, f, fprime);
  const SpinOperatorSet ops = spin_matrices(f);
  const double to_alpha0 = 1.0 / alpha_zero_dipole_units(species);

  for (int rank = 0; rank <= 2; ++rank) {
    const auto projected = project_dyad_onto_rank(dyad, rank);
    // Prefer the m = 0 component; fall back to the component with the
    // largest-magnitude structure element when it vanishes (small f).
    double best_abs = 0.0;
    double coeff = 0.0;
    for (int m_try : {0, 1, -1, 2, -2}) {
      if (std::abs(m_try) > rank) continue;
      const Matrix s = tensor_structure(ops, rank, m_try);
      Eigen::Index r = 0, c = 0;
      const double smax = s.cwiseAbs().maxCoeff(&r, &c);
      if (smax < 1e-14) continue;
      const Matrix& p = projected[m_try + rank].matrix;
      const double candidate = (p(r, c) / s(r, c)).real() * to_alpha0;
      if (m_try == 0) {
        coeff = candidate;
        best_abs = smax;
        break;
      }
      if (smax > best_abs) {
        best_abs = smax;
        coeff = candidate;
      }
    }
    out.alpha_norm[rank] = coeff;
  }
  return out;
}

double alpha_zero(const AtomSpecies& species) {
  const double l3 = std::pow(species.wavelength, 3);
  return 3.0 * constants::epsilon0 * constants::hbar * species.linewidth * l3 /
         (8.0 * std::numbers::pi * std::numbers::pi);
}

double alpha_zero_dipole_units(const AtomSpecies& species) {
  return double(species.ground_j.multiplicity()) /
         double(species.excited_j.multiplicity());
}

double alpha_sum_over_detuning(const AtomSpecies& species, int rank,
                               double probe_detuning) {
  double sum = 0.0;
  for (const ExcitedLevel& lvl : species.excited_levels) {
    const auto coeffs = alpha_coefficients(species, species.ground_f, lvl.fprime);
    const double delta = species.detuning_from_level(probe_detuning, lvl);
    if (std::abs(delta) < 1e-9 * species.linewidth) {
      throw std::domain_error("probe is on resonance with the f' = " +
                              lvl.fprime.str() + " line");
    }
    sum += coeffs.alpha_norm[rank] / delta;
  }
  return sum;
}

}  // namespace polariscope
