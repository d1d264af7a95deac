// Python bindings for the core operations: angular-momentum symbols,
// polarizability decomposition, semiclassical Stokes dynamics and the
// measurement/filtering chain.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <stdexcept>

#include "polariscope/config.hpp"
#include "polariscope/errors.hpp"
#include "polariscope/measurement.hpp"
#include "polariscope/polarizability.hpp"
#include "polariscope/semiclassical.hpp"
#include "polariscope/wigner.hpp"

namespace py = pybind11;
using namespace polariscope;

namespace {

// Spins arrive as Python numbers; 3.5 means j = 7/2 and must be an
// exact half-integer.
HalfInt to_half_int(double v) {
  const double twice = 2.0 * v;
  const long rounded = std::lround(twice);
  if (std::abs(twice - static_cast<double>(rounded)) > 1e-9) {
    throw std::invalid_argument("spin must be an integer or half-integer, got " +
                                std::to_string(v));
  }
  return HalfInt::from_twice(static_cast<int>(rounded));
}

PathSpec make_path(const std::string& name, int samples) {
  PathSpec path;
  if (name == "xz") {
    path.kind = PathKind::XZ_PLANE;
  } else if (name == "xy") {
    path.kind = PathKind::XY_PLANE;
  } else {
    throw std::invalid_argument("path must be 'xz' or 'xy'");
  }
  path.samples = samples;
  return path;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Off-resonant probing of multilevel alkali atoms";
  m.attr("__version__") = POLARISCOPE_VERSION;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError",
                                           PyExc_RuntimeError);

  // --- angular momentum ---------------------------------------------
  m.def(
      "clebsch_gordan",
      [](double j1, double m1, double j2, double m2, double J, double M) {
        return clebsch_gordan(to_half_int(j1), to_half_int(m1), to_half_int(j2),
                              to_half_int(m2), to_half_int(J), to_half_int(M));
      },
      py::arg("j1"), py::arg("m1"), py::arg("j2"), py::arg("m2"), py::arg("J"),
      py::arg("M"), "Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>");
  m.def(
      "wigner6j",
      [](double j1, double j2, double j3, double j4, double j5, double j6) {
        return wigner6j(to_half_int(j1), to_half_int(j2), to_half_int(j3),
                        to_half_int(j4), to_half_int(j5), to_half_int(j6));
      },
      py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("j4"), py::arg("j5"),
      py::arg("j6"), "Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}");

  // --- data model ----------------------------------------------------
  py::class_<ExcitedLevel>(m, "ExcitedLevel")
      .def_property_readonly(
          "fprime", [](const ExcitedLevel& l) { return l.fprime.value(); })
      .def_readonly("offset", &ExcitedLevel::offset);

  py::class_<AtomSpecies>(m, "AtomSpecies")
      .def_readonly("name", &AtomSpecies::name)
      .def_property_readonly(
          "nuclear_spin", [](const AtomSpecies& s) { return s.nuclear_spin.value(); })
      .def_property_readonly(
          "ground_f", [](const AtomSpecies& s) { return s.ground_f.value(); })
      .def_readonly("linewidth", &AtomSpecies::linewidth)
      .def_readonly("wavelength", &AtomSpecies::wavelength)
      .def_readonly("excited_levels", &AtomSpecies::excited_levels);

  py::class_<CloudParams>(m, "CloudParams")
      .def(py::init([](double n_atoms, double radius) {
             CloudParams c;
             c.n_atoms = n_atoms;
             c.radius = radius;
             return c;
           }),
           py::arg("n_atoms"), py::arg("radius"))
      .def_readwrite("n_atoms", &CloudParams::n_atoms)
      .def_readwrite("radius", &CloudParams::radius)
      .def("area", &CloudParams::area)
      .def("optical_depth", &CloudParams::optical_depth, py::arg("species"));

  py::class_<ProbeParams>(m, "ProbeParams")
      .def(py::init([](double power, double detuning, double efficiency) {
             ProbeParams p;
             p.power = power;
             p.detuning = detuning;
             p.efficiency = efficiency;
             p.validate();
             return p;
           }),
           py::arg("power"), py::arg("detuning"), py::arg("efficiency") = 1.0)
      .def_readwrite("power", &ProbeParams::power)
      .def_readwrite("detuning", &ProbeParams::detuning)
      .def_readwrite("efficiency", &ProbeParams::efficiency);

  py::class_<SimulationParams>(m, "SimulationParams")
      .def_readonly("dt", &SimulationParams::dt)
      .def_readonly("duration", &SimulationParams::duration)
      .def_readonly("seed", &SimulationParams::seed)
      .def_readonly("samples", &SimulationParams::samples);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("species", &ExperimentConfig::species)
      .def_readonly("cloud", &ExperimentConfig::cloud)
      .def_readonly("probe", &ExperimentConfig::probe)
      .def_readonly("simulation", &ExperimentConfig::simulation);

  m.def("load_species", &load_species, py::arg("path"));
  m.def("load_experiment", &load_experiment, py::arg("path"));
  m.def("parse_quantity", &parse_quantity, py::arg("text"), py::arg("dimension"));

  // --- polarizability --------------------------------------------------
  m.def(
      "alpha_coefficients",
      [](const AtomSpecies& sp, double f, double fprime) {
        const auto a = alpha_coefficients(sp, to_half_int(f), to_half_int(fprime));
        return py::make_tuple(a.alpha_norm[0], a.alpha_norm[1], a.alpha_norm[2]);
      },
      py::arg("species"), py::arg("f"), py::arg("fprime"),
      "Normalized (alpha0, alpha1, alpha2) coefficients in alpha_0 units");
  m.def(
      "irreducible_tensor_operator",
      [](const AtomSpecies& sp, double f, double fprime, int rank, int comp) {
        return irreducible_tensor_operator(to_half_int(f), to_half_int(fprime),
                                           sp, rank, comp)
            .matrix;
      },
      py::arg("species"), py::arg("f"), py::arg("fprime"), py::arg("rank"),
      py::arg("m"), "Closed-form T^(rank)_m on the ground manifold, alpha_0 units");
  m.def(
      "dyad_tensor_operator",
      [](const AtomSpecies& sp, double f, double fprime, int rank, int comp) {
        const auto dyad =
            polarizability_dyad(sp, to_half_int(f), to_half_int(fprime));
        const auto proj = project_dyad_onto_rank(dyad, rank);
        return Matrix(proj[comp + rank].matrix / alpha_zero_dipole_units(sp));
      },
      py::arg("species"), py::arg("f"), py::arg("fprime"), py::arg("rank"),
      py::arg("m"),
      "Dyad-projection route to T^(rank)_m, alpha_0 units (cross-check)");
  m.def("alpha_zero", &alpha_zero, py::arg("species"));

  // --- semiclassical ----------------------------------------------------
  m.def("resonant_cross_section", &resonant_cross_section, py::arg("species"));
  m.def("gamma0", &gamma0, py::arg("species"), py::arg("cloud"));
  m.def(
      "simulate_trajectory",
      [](const AtomSpecies& sp, const CloudParams& cloud, double detuning,
         const std::string& path, int samples) {
        const TrajectoryResult traj =
            simulate_trajectory(sp, cloud, detuning, make_path(path, samples));
        Eigen::VectorXd t(traj.size()), sy(traj.size()), sz(traj.size());
        for (size_t i = 0; i < traj.size(); ++i) {
          t[static_cast<int>(i)] = traj[i].path_parameter;
          sy[static_cast<int>(i)] = traj[i].sy_norm;
          sz[static_cast<int>(i)] = traj[i].sz_norm;
        }
        return py::make_tuple(t, sy, sz);
      },
      py::arg("species"), py::arg("cloud"), py::arg("detuning"),
      py::arg("path") = "xz", py::arg("samples") = 200,
      "Returns (path_parameter, sy_norm, sz_norm) arrays");
  m.def(
      "detuning_scan",
      [](const AtomSpecies& sp, const CloudParams& cloud,
         const std::vector<double>& detunings, int samples) {
        const auto pts = detuning_scan(sp, cloud, detunings, samples);
        Eigen::VectorXd vec(pts.size()), ten(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
          vec[static_cast<int>(i)] = pts[i].vector_peak;
          ten[static_cast<int>(i)] = pts[i].tensor_peak;
        }
        return py::make_tuple(vec, ten);
      },
      py::arg("species"), py::arg("cloud"), py::arg("detunings"),
      py::arg("samples") = 200, "Returns (vector_peak, tensor_peak) arrays");

  // --- measurement -------------------------------------------------------
  py::class_<MeasurementParams>(m, "MeasurementParams")
      .def_readonly("scattering_strength", &MeasurementParams::scattering_strength)
      .def_readonly("shot_noise", &MeasurementParams::shot_noise)
      .def_readonly("meas_strength", &MeasurementParams::meas_strength)
      .def_readonly("scat_rate", &MeasurementParams::scat_rate);

  m.def("measurement_strength", &measurement_strength, py::arg("species"),
        py::arg("cloud"), py::arg("probe"));
  m.def(
      "simulate_photocurrent",
      [](const MeasurementParams& mp, double fz_true, double eta, double dt,
         double duration, std::uint64_t seed) {
        const PhotocurrentRecord rec =
            simulate_photocurrent(mp, fz_true, eta, dt, duration, seed);
        Eigen::VectorXd y(rec.samples.size());
        for (size_t i = 0; i < rec.samples.size(); ++i) {
          y[static_cast<int>(i)] = rec.samples[i];
        }
        return y;
      },
      py::arg("m_params"), py::arg("fz_true"), py::arg("eta"), py::arg("dt"),
      py::arg("duration"), py::arg("seed"));
  m.def(
      "filter_photocurrent",
      [](const MeasurementParams& mp, double fz_true, double eta, double dt,
         double duration, std::uint64_t seed, double prior_var) {
        const PhotocurrentRecord rec =
            simulate_photocurrent(mp, fz_true, eta, dt, duration, seed);
        const auto states = filter_estimate(rec, prior_var, mp, eta);
        Eigen::VectorXd t(states.size()), est(states.size()), var(states.size());
        for (size_t i = 0; i < states.size(); ++i) {
          t[static_cast<int>(i)] = states[i].elapsed;
          est[static_cast<int>(i)] = states[i].estimate;
          var[static_cast<int>(i)] = states[i].variance;
        }
        return py::make_tuple(t, est, var);
      },
      py::arg("m_params"), py::arg("fz_true"), py::arg("eta"), py::arg("dt"),
      py::arg("duration"), py::arg("seed"), py::arg("prior_var"),
      "Simulates a record and returns filter (t, estimate, variance) arrays");
  m.def("conditional_variance", &conditional_variance, py::arg("prior_var"),
        py::arg("eta"), py::arg("meas_strength"), py::arg("tau"));
  m.def(
      "snr_squeezing",
      [](const AtomSpecies& sp, const CloudParams& cloud,
         const ProbeParams& probe, double tau) {
        const SqueezingResult r = snr_squeezing(sp, cloud, probe, tau);
        return py::make_tuple(r.snr2, r.w, r.validity_warning);
      },
      py::arg("species"), py::arg("cloud"), py::arg("probe"), py::arg("tau"),
      "Returns (snr2, w, validity_warning) for measurement time tau");
}
