#include "triqed/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace triqed {

namespace {

void refresh_derived(CouplingSet& c) {
  c.Delta = c.omega0 - c.omega_e;
  c.kappa = c.omega0 - c.omegaM;
  c.delta_so = c.omega_e - c.kappa;
  c.Omega_half = 0.5 * (c.omega0 + c.omegaM);
}

}  // namespace

CouplingSet CouplingSet::dimensionless(double omega0, double omega_e, double g,
                                       double xi, double eta, double omegaM) {
  return with_frequencies(UnitSystem::dimensionless, omega0, omegaM, omega_e, g,
                          xi, eta);
}

CouplingSet CouplingSet::with_frequencies(UnitSystem units, double omega0,
                                          double omegaM, double omega_e,
                                          double g, double xi, double eta) {
  if (!(omegaM > 0)) throw ConfigError("omegaM must be positive");
  if (!(omega0 > 0)) throw ConfigError("omega0 must be positive");
  if (omega_e < 0) throw ConfigError("omega_e must be nonnegative");
  CouplingSet c;
  c.units = units;
  c.omega0 = omega0;
  c.omegaM = omegaM;
  c.omega_e = omega_e;
  c.g = g;
  c.xi = xi;
  c.eta = eta;
  refresh_derived(c);
  return c;
}

CouplingSet CouplingSet::scaled(double s) const {
  if (!(s > 0)) throw ConfigError("scale factor must be positive");
  CouplingSet c = *this;
  c.omega0 *= s;
  c.omegaM *= s;
  c.omega_e *= s;
  c.g *= s;
  c.xi *= s;
  c.eta *= s;
  c.eta_prime = 0;  // SI bookkeeping does not survive rescaling
  c.epsilon_field = 0;
  refresh_derived(c);
  return c;
}

CouplingSet derive_couplings(const RawPhysicalParams& p) {
  if (!(p.omega0 > 0) || !(p.omegaM > 0))
    throw ConfigError("mode frequencies must be positive");
  if (!(p.mirror_mass > 0)) throw ConfigError("mirror mass must be positive");
  if (!(p.cavity_length > 0)) throw ConfigError("cavity length must be positive");
  if (!(p.mode_volume > 0)) throw ConfigError("mode volume must be positive");
  if (p.atom_position < 0 || p.atom_position > p.cavity_length)
    throw ConfigError("atom position must lie inside the cavity");
  if (p.temperature < 0) throw ConfigError("temperature must be nonnegative");
  if (p.omega_e < 0) throw ConfigError("omega_e must be nonnegative");

  PhysicalConstants k;
  const double wavenumber = p.omega0 / k.c_light;
  const double kx0 = wavenumber * p.atom_position;
  const double epsilon =
      std::sqrt(k.hbar * p.omega0 / (k.eps0 * p.mode_volume));  // V/m
  const double x_zpf = std::sqrt(k.hbar / (2.0 * p.mirror_mass * p.omegaM));

  CouplingSet c = CouplingSet::with_frequencies(
      UnitSystem::si, p.omega0, p.omegaM, p.omega_e,
      -(p.dipole_moment * epsilon / k.hbar) * std::sin(kx0),
      (p.omega0 / p.cavity_length) * x_zpf, 0.0);
  c.epsilon_field = epsilon;
  c.eta_prime =
      (std::sin(kx0) + kx0 * std::cos(kx0)) * epsilon / p.cavity_length;
  c.eta = c.eta_prime * p.dipole_moment * x_zpf / k.hbar;
  return c;
}

CouplingSet to_dimensionless(const CouplingSet& c) {
  CouplingSet out = c.scaled(1.0 / c.omegaM);
  out.units = UnitSystem::dimensionless;
  return out;
}

double parametric_resonance_residual(const CouplingSet& c) {
  const double lhs = c.g * c.xi;
  const double rhs = c.Delta * c.eta;
  const double floor = c.omegaM * c.omegaM;
  return (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), floor});
}

bool at_parametric_resonance(const CouplingSet& c, double tol) {
  return std::abs(parametric_resonance_residual(c)) <= tol;
}

double thermal_beta_omega(const CouplingSet& c, double temperature,
                          double omega) {
  if (temperature < 0) throw ConfigError("temperature must be nonnegative");
  if (temperature == 0) return std::numeric_limits<double>::infinity();
  if (c.units == UnitSystem::si)
    return c.consts.hbar * omega / (c.consts.k_boltzmann * temperature);
  return omega / temperature;  // temperature given as k_B T / (hbar omegaM)
}

OperatorMatrix build_full_hamiltonian(const CouplingSet& c,
                                      const HilbertDims& dims) {
  const Matrix a = annihilation(dims.photon_cutoff);
  const Matrix na = number_op(dims.photon_cutoff);
  const Matrix ia = Matrix::Identity(dims.photon_cutoff, dims.photon_cutoff);
  const Matrix nb = number_op(dims.phonon_cutoff);
  const Matrix xb = position_quadrature(dims.phonon_cutoff);
  const Matrix ib = Matrix::Identity(dims.phonon_cutoff, dims.phonon_cutoff);
  const SpinOps s = spin_ops();

  Matrix h = c.omega0 * tensor3(na, ib, s.id, dims).mat +
             c.omegaM * tensor3(ia, nb, s.id, dims).mat -
             c.xi * tensor3(na, xb, s.id, dims).mat +
             c.omega_e * tensor3(ia, ib, s.sz, dims).mat;
  Matrix raise = c.g * tensor3(a, ib, s.sp, dims).mat -
                 c.eta * tensor3(a, xb, s.sp, dims).mat;
  h += raise + raise.adjoint().eval();

  OperatorMatrix op{std::move(h), dims, true};
  return op;
}

OperatorMatrix build_rwa_hamiltonian(const CouplingSet& c,
                                     const HilbertDims& dims) {
  const Matrix a = annihilation(dims.photon_cutoff);
  const Matrix na = number_op(dims.photon_cutoff);
  const Matrix ia = Matrix::Identity(dims.photon_cutoff, dims.photon_cutoff);
  const Matrix b = annihilation(dims.phonon_cutoff);
  const Matrix nb = number_op(dims.phonon_cutoff);
  const Matrix ib = Matrix::Identity(dims.phonon_cutoff, dims.phonon_cutoff);
  const SpinOps s = spin_ops();

  Matrix h = c.omega0 * tensor3(na, ib, s.id, dims).mat +
             c.omegaM * tensor3(ia, nb, s.id, dims).mat +
             c.omega_e * tensor3(ia, ib, s.sz, dims).mat;
  Matrix raise = c.eta * tensor3(a, b.adjoint(), s.sp, dims).mat;
  h += raise + raise.adjoint().eval();

  OperatorMatrix op{std::move(h), dims, true};
  return op;
}

OperatorMatrix build_jc_hamiltonian(const CouplingSet& c, double l, int cutoff) {
  if (!(l > 0)) throw ConfigError("excitation scale l must be positive");
  if (cutoff < 1) throw ConfigError("Fock cutoffs must be at least 1");
  const Matrix a = annihilation(cutoff);
  const Matrix n = number_op(cutoff);
  const Matrix id = Matrix::Identity(cutoff, cutoff);
  const SpinOps s = spin_ops();

  Matrix h = c.kappa * kron(n, s.id) + c.omega_e * kron(id, s.sz);
  Matrix raise = (c.eta * std::sqrt(2.0 * l)) * kron(a, s.sp);
  h += raise + raise.adjoint().eval();

  OperatorMatrix op{std::move(h), std::nullopt, true};
  return op;
}

std::optional<std::string> rwa_advisory(const CouplingSet& c) {
  const double ratio = std::abs(c.delta_so) / c.omegaM;
  if (ratio <= 0.1) return std::nullopt;
  std::ostringstream msg;
  msg << "RWA reduction is marginal here: |delta_so| = " << std::abs(c.delta_so)
      << " is " << ratio << " of omegaM; the dropped terms rotate too slowly";
  return msg.str();
}

}  // namespace triqed
