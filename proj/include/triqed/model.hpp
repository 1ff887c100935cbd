#pragma once

#include <optional>
#include <string>

#include "triqed/errors.hpp"
#include "triqed/hilbert.hpp"

namespace triqed {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;        // J s
  double k_boltzmann = 1.380649e-23;    // J / K
  double eps0 = 8.8541878128e-12;       // F / m
  double c_light = 299792458.0;         // m / s
};

// si: frequencies in rad/s, temperatures in K.
// dimensionless: omegaM = 1 sets the scale, hbar = k_B = 1; temperatures are
// then k_B T in units of the phonon quantum.
enum class UnitSystem { si, dimensionless };

// Microscopic inputs for deriving the coupling constants (SI).
struct RawPhysicalParams {
  double omega0 = 0;         // cavity mode angular frequency, rad/s
  double omegaM = 0;         // mirror angular frequency, rad/s
  double omega_e = 0;        // atomic transition angular frequency, rad/s
  double mirror_mass = 0;    // kg
  double cavity_length = 0;  // equilibrium length l0, m
  double atom_position = 0;  // x0 in [0, l0], m
  double dipole_moment = 0;  // C m, signed
  double mode_volume = 0;    // m^3
  double temperature = 0;    // K, optional (thermal ensembles only)
};

// The three mode frequencies plus the three couplings of
//   H = w0 a†a + wM b†b - xi (b+b†) a†a + we Sz
//       + [ g a S+ - eta (b+b†) a S+ + h.c. ],
// together with the exact derived combinations used downstream.
struct CouplingSet {
  UnitSystem units = UnitSystem::dimensionless;
  double omega0 = 0;
  double omegaM = 1;
  double omega_e = 0;
  double g = 0;    // atom-photon dipole coupling, rad/s
  double xi = 0;   // light-pressure optomechanical coupling, rad/s
  double eta = 0;  // triple atom-photon-mirror coupling, rad/s

  // SI bookkeeping from derive_couplings (zero in dimensionless sets).
  double eta_prime = 0;      // field-gradient coefficient, V/m^2
  double epsilon_field = 0;  // vacuum field amplitude at the mode, V/m

  // Derived exactly on construction:
  double Delta = 0;       // omega0 - omega_e   (atom-photon detuning)
  double kappa = 0;       // omega0 - omegaM
  double delta_so = 0;    // omega_e - kappa  ==  omega_e + omegaM - omega0
  double Omega_half = 0;  // (omega0 + omegaM) / 2

  PhysicalConstants consts;

  static CouplingSet dimensionless(double omega0, double omega_e, double g,
                                   double xi, double eta, double omegaM = 1.0);
  static CouplingSet with_frequencies(UnitSystem units, double omega0,
                                      double omegaM, double omega_e, double g,
                                      double xi, double eta);
  // Every frequency (including the couplings) multiplied by s > 0; Hamiltonians
  // built from the result are exactly s times the originals.
  CouplingSet scaled(double s) const;
};

CouplingSet derive_couplings(const RawPhysicalParams& p);

// Rescale an SI set to omegaM = 1 units.
CouplingSet to_dimensionless(const CouplingSet& c);

// (g xi - Delta eta) / max(|g xi|, |Delta eta|, floor); zero at the parametric
// resonance that makes the fixed-excitation blocks factorize.
double parametric_resonance_residual(const CouplingSet& c);
bool at_parametric_resonance(const CouplingSet& c, double tol = 1e-9);

// beta * hbar * omega for thermal weights at `temperature` (K in SI sets,
// k_B T / (hbar omegaM) in dimensionless sets).
double thermal_beta_omega(const CouplingSet& c, double temperature, double omega);

OperatorMatrix build_full_hamiltonian(const CouplingSet& c, const HilbertDims& dims);

// Near-resonant reduction keeping the photon <-> phonon+atom exchange term:
//   H = w0 a†a + wM b†b + we Sz + eta (b† a S+ + a† b S-).
OperatorMatrix build_rwa_hamiltonian(const CouplingSet& c, const HilbertDims& dims);

// Single-mode two-level limit at excitation scale l, on (boson ⊗ spin) with
// index = n * 2 + s:  H = kappa a†a + we Sz + eta sqrt(2 l) (a S+ + a† S-).
OperatorMatrix build_jc_hamiltonian(const CouplingSet& c, double l, int cutoff);

// Non-empty when |delta_so| is not small against omegaM, where the RWA form
// stops being a good reduction. Advisory only; nothing refuses to run.
std::optional<std::string> rwa_advisory(const CouplingSet& c);

}  // namespace triqed
