#include <doctest.h>

#include <cmath>

#include "triqed/errors.hpp"
#include "triqed/exact.hpp"
#include "triqed/model.hpp"
#include "triqed/oracle.hpp"

using namespace triqed;

namespace {
CouplingSet reference() {
  return CouplingSet::dimensionless(5.0, 4.8, 0.6, 0.1, 0.3);
}
}  // namespace

TEST_CASE("dense eigensystem invariants") {
  const CouplingSet c = reference();
  const OperatorMatrix h = build_full_hamiltonian(c, HilbertDims(3, 8));
  const EigenSystem es = dense_eigensystem(h);
  const double scale = h.mat.cwiseAbs().maxCoeff();

  for (Eigen::Index k = 0; k + 1 < es.eigenvalues.size(); ++k)
    CHECK(es.eigenvalues(k) <= es.eigenvalues(k + 1));
  CHECK(es.residual <= 1e-9 * scale);

  const Matrix gram =
      es.eigenvectors.adjoint() * es.eigenvectors -
      Matrix::Identity(es.eigenvectors.cols(), es.eigenvectors.cols());
  CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);

  const Matrix rebuilt = es.eigenvectors *
                         es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                         es.eigenvectors.adjoint();
  CHECK((rebuilt - h.mat).cwiseAbs().maxCoeff() <= 1e-9 * scale);

  Matrix skew = Matrix::Zero(3, 3);
  skew(0, 1) = Complex(0, 1);  // not hermitian
  CHECK_THROWS_AS(dense_eigensystem(skew), PhysicsError);
}

TEST_CASE("propagation composes and conserves energy") {
  const CouplingSet c = reference();
  const HilbertDims dims(3, 8);
  const OperatorMatrix h = build_full_hamiltonian(c, dims);
  const EigenSystem es = dense_eigensystem(h);

  Vector psi0 = Vector::Zero(dims.total());
  psi0(dims.index(1, 2, 0)) = std::sqrt(0.5);
  psi0(dims.index(0, 1, 1)) = Complex(0.5, 0.5);

  const Vector one_step = propagate(es, psi0, 0.7 + 1.3);
  const Vector two_steps = propagate(es, propagate(es, psi0, 0.7), 1.3);
  CHECK((one_step - two_steps).norm() < 1e-10);
  CHECK(std::abs(one_step.norm() - psi0.norm()) < 1e-12);

  const double e0 = (psi0.adjoint() * h.mat * psi0)(0).real();
  const double e1 = (one_step.adjoint() * h.mat * one_step)(0).real();
  CHECK(std::abs(e1 - e0) <= 1e-10 * std::max(1.0, std::abs(e0)));
}

TEST_CASE("density propagation matches the pure-state route") {
  const CouplingSet c = reference();
  const HilbertDims dims(2, 6);
  const EigenSystem es = dense_eigensystem(build_full_hamiltonian(c, dims));
  Vector psi0 = Vector::Zero(dims.total());
  psi0(dims.index(0, 3, 0)) = 1.0;
  const Matrix rho0 = psi0 * psi0.adjoint();
  const double t = 2.3;
  const Matrix rho_t = propagate_density(es, rho0, t);
  const Vector psi_t = propagate(es, psi0, t);
  CHECK((rho_t - psi_t * psi_t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(rho_t.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("convergence scan over phonon cutoffs") {
  const CouplingSet c = reference();
  // ground level of the na = 0 pair subspace converges to the closed form
  const auto observable = [&](int nb_cutoff) {
    const EigenSystem es =
        dense_eigensystem(reduce_subspace(c, 0).to_matrix(nb_cutoff));
    return es.eigenvalues(0);
  };
  const ConvergenceReport rep =
      convergence_scan(observable, {10, 20, 40, 80}, 1e-8);
  CHECK(rep.converged);
  CHECK(rep.achieved_tol < 1e-8);
  CHECK(rep.converged_value ==
        doctest::Approx(eigenvalue(c, 1, 0, 0)).epsilon(1e-10));

  const auto constant = [](int) { return 4.2; };
  const ConvergenceReport flat = convergence_scan(constant, {4, 8, 16}, 1e-12);
  CHECK(flat.converged);
  CHECK(flat.achieved_tol == 0.0);

  CHECK_THROWS_AS(convergence_scan(constant, {4, 8}, 1e-8), ConfigError);
  CHECK_THROWS_AS(convergence_scan(constant, {8, 4, 16}, 1e-8), ConfigError);
}

TEST_CASE("interior rule drops truncation-polluted levels") {
  const CouplingSet c = reference();
  const HilbertDims dims(4, 12);
  const EigenSystem es = dense_eigensystem(build_full_hamiltonian(c, dims));
  const std::vector<bool> interior = interior_levels(es, dims);
  CHECK(interior.size() == size_t(dims.total()));

  int kept = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
    if (!interior[size_t(k)]) continue;
    ++kept;
    // interior eigenvectors carry almost no mass on the top two layers
    double edge = 0;
    for (int idx = 0; idx < dims.total(); ++idx) {
      int na, nb, s;
      dims.unpack(idx, na, nb, s);
      if (na >= dims.photon_cutoff - 2 || nb >= dims.phonon_cutoff - 2)
        edge += std::norm(es.eigenvectors(idx, k));
    }
    CHECK(edge <= 1e-6);
  }
  CHECK(kept > 0);
  CHECK(kept < dims.total());
}

TEST_CASE("spectrum matching pairs nearest levels bijectively") {
  const std::vector<double> closed = {1.0, 2.0, 2.0000001, 5.0};
  MatchReport rep = spectrum_match(closed, {2.0000001, 5.0, 1.0, 2.0}, 1e-6);
  CHECK(rep.bijective);
  CHECK(rep.matched == 4);
  CHECK(rep.max_abs_err == 0.0);

  // a shifted copy larger than the tolerance must not match anywhere
  std::vector<double> shifted = closed;
  for (double& v : shifted) v += 1e-5 * std::max(1.0, std::abs(v)) * 10.0;
  rep = spectrum_match(closed, shifted, 1e-6);
  CHECK(rep.matched == 0);
  CHECK(rep.unmatched_closed.size() == closed.size());
  CHECK(!rep.bijective);

  // extra numeric levels break bijectivity but not the matches
  rep = spectrum_match({1.0, 2.0}, {1.0, 2.0, 3.0}, 1e-6);
  CHECK(rep.matched == 2);
  CHECK(rep.unmatched_closed.empty());
  CHECK(rep.unmatched_numeric.size() == 1);
  CHECK(!rep.bijective);

  // degenerate cluster: every member consumed exactly once
  rep = spectrum_match({4.0, 4.0, 4.0}, {4.0, 4.0, 4.0}, 1e-6);
  CHECK(rep.bijective);
}
