#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "triqed/decoherence.hpp"
#include "triqed/dynamics.hpp"
#include "triqed/errors.hpp"
#include "triqed/exact.hpp"
#include "triqed/hilbert.hpp"
#include "triqed/model.hpp"
#include "triqed/oracle.hpp"
#include "triqed/spinorbit.hpp"
#include "triqed/validate.hpp"
#include "triqed/version.hpp"

namespace py = pybind11;
using namespace triqed;

PYBIND11_MODULE(_triqed, m) {
  m.doc() = "dense simulation core for the atom-photon-mirror triple coupling";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<PhysicsError>(m, "PhysicsError");

  // ------------------------------------------------------------- hilbert
  py::class_<HilbertDims>(m, "HilbertDims")
      .def(py::init<int, int>(), py::arg("photon"), py::arg("phonon"))
      .def_readonly("photon_cutoff", &HilbertDims::photon_cutoff)
      .def_readonly("phonon_cutoff", &HilbertDims::phonon_cutoff)
      .def("total", &HilbertDims::total)
      .def("index", &HilbertDims::index, py::arg("na"), py::arg("nb"),
           py::arg("s"))
      .def("unpack",
           [](const HilbertDims& d, int idx) {
             int na, nb, s;
             d.unpack(idx, na, nb, s);
             return py::make_tuple(na, nb, s);
           },
           py::arg("idx"))
      .def("__repr__", [](const HilbertDims& d) {
        std::ostringstream s;
        s << "HilbertDims(photon=" << d.photon_cutoff
          << ", phonon=" << d.phonon_cutoff << ")";
        return s.str();
      });

  m.def("annihilation", &annihilation, py::arg("cutoff"));
  m.def("creation", &creation, py::arg("cutoff"));
  m.def("number_op", &number_op, py::arg("cutoff"));
  m.def("position_quadrature", &position_quadrature, py::arg("cutoff"));
  m.def("displacement_operator", &displacement_operator, py::arg("alpha"),
        py::arg("cutoff"));
  m.def("displacement_cutoff_hint", &displacement_cutoff_hint, py::arg("alpha"));

  py::class_<TruncatedState>(m, "TruncatedState")
      .def_readonly("amp", &TruncatedState::amp)
      .def_readonly("tail", &TruncatedState::tail);
  m.def("coherent_state", &coherent_state, py::arg("beta"), py::arg("cutoff"));

  py::class_<TruncatedWeights>(m, "TruncatedWeights")
      .def_readonly("weights", &TruncatedWeights::weights)
      .def_readonly("tail", &TruncatedWeights::tail);
  m.def("thermal_weights", &thermal_weights, py::arg("beta_t"), py::arg("omega"),
        py::arg("cutoff"));

  m.def("hermiticity_defect", &hermiticity_defect, py::arg("m"));
  m.def("unitarity_defect", &unitarity_defect, py::arg("m"));

  // --------------------------------------------------------------- model
  py::enum_<UnitSystem>(m, "UnitSystem")
      .value("si", UnitSystem::si)
      .value("dimensionless", UnitSystem::dimensionless);

  py::class_<CouplingSet>(m, "CouplingSet")
      .def_readonly("units", &CouplingSet::units)
      .def_readonly("omega0", &CouplingSet::omega0)
      .def_readonly("omegaM", &CouplingSet::omegaM)
      .def_readonly("omega_e", &CouplingSet::omega_e)
      .def_readonly("g", &CouplingSet::g)
      .def_readonly("xi", &CouplingSet::xi)
      .def_readonly("eta", &CouplingSet::eta)
      .def_readonly("eta_prime", &CouplingSet::eta_prime)
      .def_readonly("epsilon_field", &CouplingSet::epsilon_field)
      .def_readonly("Delta", &CouplingSet::Delta)
      .def_readonly("kappa", &CouplingSet::kappa)
      .def_readonly("delta_so", &CouplingSet::delta_so)
      .def_readonly("Omega_half", &CouplingSet::Omega_half)
      .def_static("dimensionless", &CouplingSet::dimensionless, py::arg("omega0"),
                  py::arg("omega_e"), py::arg("g"), py::arg("xi"), py::arg("eta"),
                  py::arg("omegaM") = 1.0)
      .def_static("with_frequencies", &CouplingSet::with_frequencies,
                  py::arg("units"), py::arg("omega0"), py::arg("omegaM"),
                  py::arg("omega_e"), py::arg("g"), py::arg("xi"), py::arg("eta"))
      .def("scaled", &CouplingSet::scaled, py::arg("s"))
      .def("__repr__", [](const CouplingSet& c) {
        std::ostringstream s;
        s << "CouplingSet(omega0=" << c.omega0 << ", omegaM=" << c.omegaM
          << ", omega_e=" << c.omega_e << ", g=" << c.g << ", xi=" << c.xi
          << ", eta=" << c.eta << ")";
        return s.str();
      });

  py::class_<RawPhysicalParams>(m, "RawPhysicalParams")
      .def(py::init<>())
      .def_readwrite("omega0", &RawPhysicalParams::omega0)
      .def_readwrite("omegaM", &RawPhysicalParams::omegaM)
      .def_readwrite("omega_e", &RawPhysicalParams::omega_e)
      .def_readwrite("mirror_mass", &RawPhysicalParams::mirror_mass)
      .def_readwrite("cavity_length", &RawPhysicalParams::cavity_length)
      .def_readwrite("atom_position", &RawPhysicalParams::atom_position)
      .def_readwrite("dipole_moment", &RawPhysicalParams::dipole_moment)
      .def_readwrite("mode_volume", &RawPhysicalParams::mode_volume)
      .def_readwrite("temperature", &RawPhysicalParams::temperature);

  m.def("derive_couplings", &derive_couplings, py::arg("params"));
  m.def("to_dimensionless", &to_dimensionless, py::arg("c"));
  m.def("parametric_resonance_residual", &parametric_resonance_residual,
        py::arg("c"));
  m.def("at_parametric_resonance", &at_parametric_resonance, py::arg("c"),
        py::arg("tol") = 1e-9);
  m.def("thermal_beta_omega", &thermal_beta_omega, py::arg("c"),
        py::arg("temperature"), py::arg("omega"));
  m.def("rwa_advisory", &rwa_advisory, py::arg("c"));

  m.def("build_full_hamiltonian",
        [](const CouplingSet& c, const HilbertDims& d) {
          return build_full_hamiltonian(c, d).mat;
        },
        py::arg("c"), py::arg("dims"));
  m.def("build_rwa_hamiltonian",
        [](const CouplingSet& c, const HilbertDims& d) {
          return build_rwa_hamiltonian(c, d).mat;
        },
        py::arg("c"), py::arg("dims"));
  m.def("build_jc_hamiltonian",
        [](const CouplingSet& c, double l, int cutoff) {
          return build_jc_hamiltonian(c, l, cutoff).mat;
        },
        py::arg("c"), py::arg("l"), py::arg("cutoff"));

  // --------------------------------------------------------------- exact
  py::class_<SubspaceHamiltonian>(m, "SubspaceHamiltonian")
      .def_readonly("na", &SubspaceHamiltonian::na)
      .def_readonly("h_const", &SubspaceHamiltonian::h_const)
      .def_readonly("h_number", &SubspaceHamiltonian::h_number)
      .def("to_matrix", &SubspaceHamiltonian::to_matrix,
           py::arg("phonon_cutoff"));
  m.def("reduce_subspace", &reduce_subspace, py::arg("c"), py::arg("na"));

  py::class_<BranchForm>(m, "BranchForm")
      .def_readonly("constant", &BranchForm::constant)
      .def_readonly("x_coeff", &BranchForm::x_coeff)
      .def_readonly("omegaM", &BranchForm::omegaM)
      .def("alpha", &BranchForm::alpha)
      .def("ground_energy", &BranchForm::ground_energy)
      .def("to_matrix", &BranchForm::to_matrix, py::arg("phonon_cutoff"));
  m.def("branch_form", &branch_form, py::arg("c"), py::arg("j"), py::arg("na"));

  py::class_<DressedLevel>(m, "DressedLevel")
      .def_readonly("j", &DressedLevel::j)
      .def_readonly("na", &DressedLevel::na)
      .def_readonly("nb", &DressedLevel::nb)
      .def_readonly("energy", &DressedLevel::energy)
      .def_readonly("r_na", &DressedLevel::r_na)
      .def_readonly("alpha", &DressedLevel::alpha)
      .def_readonly("theta", &DressedLevel::theta);

  py::class_<LightPressureSplit>(m, "LightPressureSplit")
      .def_readonly("pressure", &LightPressureSplit::pressure)
      .def_readonly("triple", &LightPressureSplit::triple);

  m.def("eigenvalue", &eigenvalue, py::arg("c"), py::arg("j"), py::arg("na"),
        py::arg("nb"));
  m.def("displacement_alpha", &displacement_alpha, py::arg("c"), py::arg("j"),
        py::arg("na"));
  m.def("mixing_angle", &mixing_angle, py::arg("c"), py::arg("na"));
  m.def("dressed_level", &dressed_level, py::arg("c"), py::arg("j"),
        py::arg("na"), py::arg("nb"));
  m.def("dressed_amplitudes", &dressed_amplitudes, py::arg("c"), py::arg("j"),
        py::arg("na"));
  m.def("displaced_fock_state", &displaced_fock_state, py::arg("c"),
        py::arg("j"), py::arg("na"), py::arg("nb"), py::arg("cutoff"));
  m.def("light_pressure_decomposition", &light_pressure_decomposition,
        py::arg("c"), py::arg("j"), py::arg("na"));
  m.def("levels_in_window", &levels_in_window, py::arg("c"), py::arg("lo"),
        py::arg("hi"), py::arg("na_max"), py::arg("nb_max"));

  // --------------------------------------------------------- decoherence
  py::class_<EchoSpec>(m, "EchoSpec")
      .def_readonly("j1", &EchoSpec::j1)
      .def_readonly("na", &EchoSpec::na)
      .def_readonly("j2", &EchoSpec::j2)
      .def_readonly("ma", &EchoSpec::ma)
      .def_readonly("beta", &EchoSpec::beta)
      .def_readonly("delta_echo", &EchoSpec::delta_echo);
  m.def("make_echo_spec", &make_echo_spec, py::arg("c"), py::arg("j1"),
        py::arg("na"), py::arg("j2"), py::arg("ma"), py::arg("beta"));

  py::class_<BranchCoherent>(m, "BranchCoherent")
      .def_readonly("amplitude", &BranchCoherent::amplitude)
      .def_readonly("phase", &BranchCoherent::phase);
  m.def("evolve_branch_coherent", &evolve_branch_coherent, py::arg("c"),
        py::arg("j"), py::arg("na"), py::arg("beta"), py::arg("t"));

  m.def("decoherence_factor", &decoherence_factor, py::arg("c"), py::arg("spec"),
        py::arg("t"));
  m.def("loschmidt_echo", &loschmidt_echo, py::arg("c"), py::arg("spec"),
        py::arg("t"));
  m.def("time_grid", &time_grid, py::arg("t0"), py::arg("t1"), py::arg("points"));

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("times", &TimeSeries::times)
      .def_readonly("values", &TimeSeries::values)
      .def_readonly("label", &TimeSeries::label);
  m.def("echo_series", &echo_series, py::arg("c"), py::arg("specs"),
        py::arg("times"));

  // ----------------------------------------------------------- spinorbit
  py::class_<AngularLabel>(m, "AngularLabel")
      .def_readonly("l", &AngularLabel::l)
      .def_readonly("m", &AngularLabel::m)
      .def("photon", &AngularLabel::photon)
      .def("phonon", &AngularLabel::phonon)
      .def_static("from_occupations", &AngularLabel::from_occupations,
                  py::arg("na"), py::arg("nb"));
  m.def("valid_angular", &valid_angular, py::arg("l"), py::arg("m"));

  py::class_<JordanSchwingerOps>(m, "JordanSchwingerOps")
      .def_readonly("lp", &JordanSchwingerOps::lp)
      .def_readonly("lm", &JordanSchwingerOps::lm)
      .def_readonly("lz", &JordanSchwingerOps::lz)
      .def_readonly("n_total", &JordanSchwingerOps::n_total);
  m.def("jordan_schwinger_ops", &jordan_schwinger_ops, py::arg("photon_cutoff"),
        py::arg("phonon_cutoff"));
  m.def("build_ls_hamiltonian",
        [](const CouplingSet& c, const HilbertDims& d) {
          return build_ls_hamiltonian(c, d).mat;
        },
        py::arg("c"), py::arg("dims"));

  py::class_<BlockSpectrum>(m, "BlockSpectrum")
      .def_readonly("l", &BlockSpectrum::l)
      .def_readonly("m", &BlockSpectrum::m)
      .def_readonly("singleton", &BlockSpectrum::singleton)
      .def_readonly("g_lm", &BlockSpectrum::g_lm)
      .def_readonly("r_lm", &BlockSpectrum::r_lm)
      .def_readonly("theta", &BlockSpectrum::theta)
      .def_readonly("e_plus", &BlockSpectrum::e_plus)
      .def_readonly("e_minus", &BlockSpectrum::e_minus);
  m.def("block_2x2", &block_2x2, py::arg("c"), py::arg("l"), py::arg("m"));
  m.def("assemble_blocks", &assemble_blocks, py::arg("c"), py::arg("l"));

  py::class_<ScanRow>(m, "ScanRow")
      .def_readonly("l", &ScanRow::l)
      .def_readonly("m", &ScanRow::m)
      .def_readonly("omega_e", &ScanRow::omega_e)
      .def_readonly("e_plus", &ScanRow::e_plus)
      .def_readonly("e_minus", &ScanRow::e_minus)
      .def_readonly("g_lm", &ScanRow::g_lm)
      .def_readonly("theta", &ScanRow::theta)
      .def_readonly("singleton", &ScanRow::singleton);
  m.def("spectrum_scan", &spectrum_scan, py::arg("c"), py::arg("l"),
        py::arg("omega_e_grid"));

  py::class_<HPLevel>(m, "HPLevel")
      .def_readonly("n", &HPLevel::n)
      .def_readonly("g_n", &HPLevel::g_n)
      .def_readonly("r_n", &HPLevel::r_n)
      .def_readonly("e_plus", &HPLevel::e_plus)
      .def_readonly("e_minus", &HPLevel::e_minus)
      .def_readonly("matched_m", &HPLevel::matched_m);
  m.def("hp_limit_spectrum",
        [](const CouplingSet& c, double l, int n_max) {
          std::optional<std::string> advisory;
          auto levels = hp_limit_spectrum(c, l, n_max, &advisory);
          return py::make_tuple(levels, advisory);
        },
        py::arg("c"), py::arg("l"), py::arg("n_max"),
        "Returns (levels, advisory); advisory is None when n_max << l.");

  // ------------------------------------------------------------ dynamics
  py::class_<RabiCell>(m, "RabiCell")
      .def_readonly("i", &RabiCell::i)
      .def_readonly("j", &RabiCell::j)
      .def_readonly("omega_rabi", &RabiCell::omega_rabi)
      .def_readonly("phi", &RabiCell::phi)
      .def_readonly("omega_free", &RabiCell::omega_free);
  m.def("rabi_cell", &rabi_cell, py::arg("c"), py::arg("i"), py::arg("j"));
  m.def("cell_amplitudes", &cell_amplitudes, py::arg("cell"), py::arg("t"));

  py::class_<BranchState>(m, "BranchState")
      .def_readonly("amp_e", &BranchState::amp_e)
      .def_readonly("amp_g", &BranchState::amp_g)
      .def_readonly("free_phase", &BranchState::free_phase);
  m.def("branch_state", &branch_state, py::arg("c"), py::arg("i"), py::arg("j"),
        py::arg("t"));

  py::enum_<EnsembleKind>(m, "EnsembleKind")
      .value("thermal", EnsembleKind::thermal)
      .value("fock", EnsembleKind::fock)
      .value("coherent", EnsembleKind::coherent)
      .value("custom", EnsembleKind::custom);

  py::class_<InitialEnsemble>(m, "InitialEnsemble")
      .def_readonly("kind", &InitialEnsemble::kind)
      .def_readonly("weights", &InitialEnsemble::weights)
      .def_readonly("tail_mass", &InitialEnsemble::tail_mass);
  m.def("ensemble_thermal", &ensemble_thermal, py::arg("c"),
        py::arg("temperature"), py::arg("mass_tol") = 1e-8);
  m.def("ensemble_fock", &ensemble_fock, py::arg("c"), py::arg("n0"),
        py::arg("temperature"), py::arg("mass_tol") = 1e-8);
  m.def("ensemble_coherent", &ensemble_coherent, py::arg("c"), py::arg("alpha"),
        py::arg("temperature"), py::arg("mass_tol") = 1e-8);
  m.def("ensemble_custom", &ensemble_custom, py::arg("weights"));

  m.def("population_inversion", &population_inversion, py::arg("c"),
        py::arg("ensemble"), py::arg("t"));
  m.def("photon_distribution", &photon_distribution, py::arg("c"),
        py::arg("ensemble"), py::arg("n"), py::arg("t"));
  m.def("inversion_series", &inversion_series, py::arg("c"), py::arg("ensemble"),
        py::arg("times"));
  m.def("photon_distribution_series", &photon_distribution_series, py::arg("c"),
        py::arg("ensemble"), py::arg("n_max"), py::arg("times"));

  // -------------------------------------------------------------- oracle
  py::class_<EigenSystem>(m, "EigenSystem")
      .def_readonly("eigenvalues", &EigenSystem::eigenvalues)
      .def_readonly("eigenvectors", &EigenSystem::eigenvectors)
      .def_readonly("residual", &EigenSystem::residual);
  m.def("dense_eigensystem",
        [](const Matrix& h) { return dense_eigensystem(h); }, py::arg("h"));
  m.def("propagate", &propagate, py::arg("es"), py::arg("psi0"), py::arg("t"));
  m.def("propagate_density", &propagate_density, py::arg("es"), py::arg("rho0"),
        py::arg("t"));

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("cutoffs", &ConvergenceReport::cutoffs)
      .def_readonly("values", &ConvergenceReport::values)
      .def_readonly("converged_value", &ConvergenceReport::converged_value)
      .def_readonly("achieved_tol", &ConvergenceReport::achieved_tol)
      .def_readonly("converged", &ConvergenceReport::converged);
  m.def("convergence_scan", &convergence_scan, py::arg("observable_at_cutoff"),
        py::arg("schedule"), py::arg("tol"));

  m.def("interior_levels",
        [](const EigenSystem& es, const HilbertDims& dims, int layers,
           double mass_tol) {
          return interior_levels(es, dims, layers, mass_tol);
        },
        py::arg("es"), py::arg("dims"), py::arg("layers") = 2,
        py::arg("mass_tol") = 1e-6);

  py::class_<MatchReport>(m, "MatchReport")
      .def_readonly("matched", &MatchReport::matched)
      .def_readonly("max_abs_err", &MatchReport::max_abs_err)
      .def_readonly("max_rel_err", &MatchReport::max_rel_err)
      .def_readonly("unmatched_closed", &MatchReport::unmatched_closed)
      .def_readonly("unmatched_numeric", &MatchReport::unmatched_numeric)
      .def_readonly("bijective", &MatchReport::bijective);
  m.def("spectrum_match", &spectrum_match, py::arg("closed_values"),
        py::arg("numeric_values"), py::arg("rel_tol"),
        py::arg("scale_floor") = 1.0);

  // ------------------------------------------------------------ validate
  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("detail", &CheckResult::detail)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("achieved", &CheckResult::achieved)
      .def_readonly("pass_", &CheckResult::pass)
      .def("__repr__", [](const CheckResult& r) {
        return "CheckResult(name='" + r.name + "', pass=" +
               (r.pass ? std::string("True") : std::string("False")) + ")";
      });
  py::class_<ValidationOptions>(m, "ValidationOptions")
      .def(py::init<>())
      .def_readwrite("spectrum_rel_tol", &ValidationOptions::spectrum_rel_tol);
  m.def("run_acceptance_suite", &run_acceptance_suite,
        py::arg("opts") = ValidationOptions{});
  m.def("all_passed", &all_passed, py::arg("results"));
}
