#pragma once

#include <utility>
#include <vector>

#include "triqed/decoherence.hpp"
#include "triqed/model.hpp"

namespace triqed {

// RWA dynamics decomposes into independent two-state cells
// {|i, j, e>, |i+1, j-1, g>} with Rabi frequency
//   Omega_ij = sqrt(4 eta^2 j (i+1) + delta_so^2),
//   tan(phi_ij) = 2 eta sqrt(j (i+1)) / (delta_so + Omega_ij),
//   omega_ij = w0 i + wM j + kappa / 2   (free phase).
// j = 0 cells have no partner: phi = 0, Omega = |delta_so|.
struct RabiCell {
  int i = 0, j = 0;
  double omega_rabi = 0;
  double phi = 0;
  double omega_free = 0;
};
RabiCell rabi_cell(const CouplingSet& c, int i, int j);

// (lambda_e, lambda_g)(t) for a cell started in |i, j, e>:
//   lambda_e = cos(Om t/2) - i cos(2 phi) sin(Om t/2),
//   lambda_g = i sin(2 phi) sin(Om t/2);   |lambda_e|^2 + |lambda_g|^2 = 1.
std::pair<Complex, Complex> cell_amplitudes(const RabiCell& cell, double t);

// Full branch state e^{-i omega_ij t} [lambda_e |i,j,e> - lambda_g |i+1,j-1,g>].
struct BranchState {
  Complex amp_e, amp_g;
  double free_phase;
};
BranchState branch_state(const CouplingSet& c, int i, int j, double t);

enum class EnsembleKind { thermal, fock, coherent, custom };

// Diagonal initial ensemble over cells: atom excited, field index i, mirror
// index j, weight matrix normalized to 1. tail_mass is the pre-normalization
// weight dropped by the adaptive truncation (kept below 1e-8 for built-ins).
struct InitialEnsemble {
  EnsembleKind kind = EnsembleKind::custom;
  Eigen::MatrixXd weights;  // (i, j), zero-based
  double tail_mass = 0;
};

InitialEnsemble ensemble_thermal(const CouplingSet& c, double temperature,
                                 double mass_tol = 1e-8);
InitialEnsemble ensemble_fock(const CouplingSet& c, int n0, double temperature,
                              double mass_tol = 1e-8);
InitialEnsemble ensemble_coherent(const CouplingSet& c, Complex alpha,
                                  double temperature, double mass_tol = 1e-8);
InitialEnsemble ensemble_custom(const Eigen::MatrixXd& weights);

// W(t) = sum_ij w_ij [cos^2(Om t/2) + cos(4 phi) sin^2(Om t/2)], in [-1, 1],
// W(0) = 1.
double population_inversion(const CouplingSet& c, const InitialEnsemble& ens,
                            double t);

// p_n(t): stay-probability of cells (n, j) plus transfer from cells (n-1, j).
double photon_distribution(const CouplingSet& c, const InitialEnsemble& ens,
                           int n, double t);

TimeSeries inversion_series(const CouplingSet& c, const InitialEnsemble& ens,
                            const RealVector& times);

// Rows n in [0, n_max], columns over times.
Eigen::MatrixXd photon_distribution_series(const CouplingSet& c,
                                           const InitialEnsemble& ens, int n_max,
                                           const RealVector& times);

}  // namespace triqed
