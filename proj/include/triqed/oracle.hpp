#pragma once

#include <functional>
#include <vector>

#include "triqed/hilbert.hpp"

namespace triqed {

// Brute-force reference results: dense diagonalization and propagation built
// only on hilbert-level operators, so closed forms can be checked against them.
struct EigenSystem {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
  double residual;         // max_k ||H v_k - w_k v_k||_inf
};

EigenSystem dense_eigensystem(const Matrix& h);
EigenSystem dense_eigensystem(const OperatorMatrix& h);

// U exp(-i diag(w) t) U† psi0 (and the density-matrix version).
Vector propagate(const EigenSystem& es, const Vector& psi0, double t);
Matrix propagate_density(const EigenSystem& es, const Matrix& rho0, double t);

struct ConvergenceReport {
  std::vector<int> cutoffs;
  std::vector<double> values;
  double converged_value = 0;
  double achieved_tol = 0;  // |last - prev| / max(1, |last|)
  bool converged = false;
};

// Evaluates a scalar observable over a strictly increasing cutoff schedule
// (length >= 3) and reports the tail difference against tol.
ConvergenceReport convergence_scan(const std::function<double(int)>& observable_at_cutoff,
                                   const std::vector<int>& schedule, double tol);

// True for eigenvectors keeping less than mass_tol of their norm^2 on the top
// `layers` Fock levels of either mode; truncation-polluted levels are dropped
// from spectrum comparisons this way.
std::vector<bool> interior_levels(const EigenSystem& es, const HilbertDims& dims,
                                  int layers = 2, double mass_tol = 1e-6);
// Same rule on a photon ⊗ phonon space without the spin factor.
std::vector<bool> interior_levels_pair(const EigenSystem& es, int photon_cutoff,
                                       int phonon_cutoff, int layers = 2,
                                       double mass_tol = 1e-6);

struct MatchReport {
  int matched = 0;
  double max_abs_err = 0;
  double max_rel_err = 0;
  std::vector<double> unmatched_closed;
  std::vector<double> unmatched_numeric;
  bool bijective = false;  // both unmatched lists empty
};

// Greedy nearest-value pairing of two level lists; a pair matches when
// |a - b| <= rel_tol * max(scale_floor, |a|). Inputs need not be sorted.
MatchReport spectrum_match(std::vector<double> closed_values,
                           std::vector<double> numeric_values, double rel_tol,
                           double scale_floor = 1.0);

}  // namespace triqed
