#include "triqed/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "triqed/errors.hpp"
#include "triqed/parallel.hpp"

namespace triqed {

EigenSystem dense_eigensystem(const Matrix& h) {
  if (h.rows() != h.cols()) throw PhysicsError("eigensystem needs a square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10 * scale)
    throw PhysicsError("eigensystem input is not Hermitian", defect);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw PhysicsError("Hermitian eigensolver failed to converge");

  EigenSystem es;
  es.eigenvalues = solver.eigenvalues();
  es.eigenvectors = solver.eigenvectors();
  Matrix defect_mat = h * es.eigenvectors -
                      es.eigenvectors * es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>();
  es.residual = defect_mat.cwiseAbs().maxCoeff();
  return es;
}

EigenSystem dense_eigensystem(const OperatorMatrix& h) {
  return dense_eigensystem(h.mat);
}

Vector propagate(const EigenSystem& es, const Vector& psi0, double t) {
  if (psi0.size() != es.eigenvectors.rows())
    throw PhysicsError("state dimension does not match the eigensystem");
  Vector modal = es.eigenvectors.adjoint() * psi0;
  for (Eigen::Index k = 0; k < modal.size(); ++k)
    modal(k) *= std::exp(Complex(0, -es.eigenvalues(k) * t));
  return es.eigenvectors * modal;
}

Matrix propagate_density(const EigenSystem& es, const Matrix& rho0, double t) {
  if (rho0.rows() != es.eigenvectors.rows() || rho0.cols() != rho0.rows())
    throw PhysicsError("density dimension does not match the eigensystem");
  Vector phases(es.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0, -es.eigenvalues(k) * t));
  Matrix modal = es.eigenvectors.adjoint() * rho0 * es.eigenvectors;
  modal = phases.asDiagonal() * modal * phases.conjugate().asDiagonal();
  return es.eigenvectors * modal * es.eigenvectors.adjoint();
}

ConvergenceReport convergence_scan(
    const std::function<double(int)>& observable_at_cutoff,
    const std::vector<int>& schedule, double tol) {
  if (schedule.size() < 3)
    throw ConfigError("convergence scan needs at least three cutoffs");
  for (size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw ConfigError("convergence scan cutoffs must be strictly increasing");

  ConvergenceReport rep;
  rep.cutoffs = schedule;
  rep.values.assign(schedule.size(), 0.0);
  parallel_for(static_cast<int>(schedule.size()), [&](int i) {
    rep.values[size_t(i)] = observable_at_cutoff(schedule[size_t(i)]);
  });
  const double last = rep.values.back();
  const double prev = rep.values[rep.values.size() - 2];
  rep.converged_value = last;
  rep.achieved_tol = std::abs(last - prev) / std::max(1.0, std::abs(last));
  rep.converged = rep.achieved_tol <= tol;
  return rep;
}

namespace {

std::vector<bool> interior_from_edge_mass(const EigenSystem& es,
                                          const std::vector<char>& edge,
                                          double mass_tol) {
  const Eigen::Index n = es.eigenvectors.cols();
  std::vector<bool> interior(size_t(n), false);
  for (Eigen::Index k = 0; k < n; ++k) {
    double mass = 0;
    for (Eigen::Index r = 0; r < es.eigenvectors.rows(); ++r)
      if (edge[size_t(r)]) mass += std::norm(es.eigenvectors(r, k));
    interior[size_t(k)] = mass <= mass_tol;
  }
  return interior;
}

}  // namespace

std::vector<bool> interior_levels(const EigenSystem& es, const HilbertDims& dims,
                                  int layers, double mass_tol) {
  if (es.eigenvectors.rows() != dims.total())
    throw PhysicsError("eigensystem dimension does not match the space");
  std::vector<char> edge(size_t(dims.total()), 0);
  for (int idx = 0; idx < dims.total(); ++idx) {
    int na, nb, s;
    dims.unpack(idx, na, nb, s);
    if (na >= dims.photon_cutoff - layers || nb >= dims.phonon_cutoff - layers)
      edge[size_t(idx)] = 1;
  }
  return interior_from_edge_mass(es, edge, mass_tol);
}

std::vector<bool> interior_levels_pair(const EigenSystem& es, int photon_cutoff,
                                       int phonon_cutoff, int layers,
                                       double mass_tol) {
  if (es.eigenvectors.rows() != Eigen::Index(photon_cutoff) * phonon_cutoff)
    throw PhysicsError("eigensystem dimension does not match the space");
  std::vector<char> edge(size_t(photon_cutoff) * phonon_cutoff, 0);
  for (int na = 0; na < photon_cutoff; ++na)
    for (int nb = 0; nb < phonon_cutoff; ++nb)
      if (na >= photon_cutoff - layers || nb >= phonon_cutoff - layers)
        edge[size_t(na) * phonon_cutoff + nb] = 1;
  return interior_from_edge_mass(es, edge, mass_tol);
}

MatchReport spectrum_match(std::vector<double> closed_values,
                           std::vector<double> numeric_values, double rel_tol,
                           double scale_floor) {
  std::sort(closed_values.begin(), closed_values.end());
  std::sort(numeric_values.begin(), numeric_values.end());
  std::vector<char> used(numeric_values.size(), 0);
  MatchReport rep;

  for (double a : closed_values) {
    // nearest unused numeric value, expanding outward from the insertion
    // point; gaps grow monotonically with index distance on each side, so the
    // scan stops once both frontiers are worse than the best found
    auto it = std::lower_bound(numeric_values.begin(), numeric_values.end(), a);
    long best = -1;
    double best_gap = 0;
    long right = it - numeric_values.begin();
    long left = right - 1;
    const long n = long(numeric_values.size());
    while (left >= 0 || right < n) {
      bool left_live = left >= 0 &&
                       (best < 0 || a - numeric_values[size_t(left)] < best_gap);
      bool right_live = right < n && (best < 0 ||
                                      numeric_values[size_t(right)] - a < best_gap);
      if (!left_live && !right_live) break;
      bool take_right =
          right_live && (!left_live || numeric_values[size_t(right)] - a <=
                                           a - numeric_values[size_t(left)]);
      long idx = take_right ? right++ : left--;
      if (used[size_t(idx)]) continue;
      double gap = std::abs(numeric_values[size_t(idx)] - a);
      if (best < 0 || gap < best_gap) {
        best = idx;
        best_gap = gap;
      }
    }
    double tol_abs = rel_tol * std::max(scale_floor, std::abs(a));
    if (best >= 0 && best_gap <= tol_abs) {
      used[size_t(best)] = 1;
      ++rep.matched;
      rep.max_abs_err = std::max(rep.max_abs_err, best_gap);
      rep.max_rel_err = std::max(
          rep.max_rel_err, best_gap / std::max(scale_floor, std::abs(a)));
    } else {
      rep.unmatched_closed.push_back(a);
    }
  }
  for (size_t i = 0; i < numeric_values.size(); ++i)
    if (!used[i]) rep.unmatched_numeric.push_back(numeric_values[i]);
  rep.bijective = rep.unmatched_closed.empty() && rep.unmatched_numeric.empty();
  return rep;
}

}  // namespace triqed
