#include "triqed/hilbert.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "triqed/errors.hpp"

namespace triqed {

HilbertDims::HilbertDims(int photon, int phonon)
    : photon_cutoff(photon), phonon_cutoff(phonon) {
  if (photon < 1 || phonon < 1)
    throw ConfigError("Fock cutoffs must be at least 1");
}

int HilbertDims::index(int na, int nb, int s) const {
  if (na < 0 || na >= photon_cutoff || nb < 0 || nb >= phonon_cutoff || s < 0 ||
      s >= spin_dim)
    throw ConfigError("basis label outside the truncated space");
  return (na * phonon_cutoff + nb) * spin_dim + s;
}

void HilbertDims::unpack(int idx, int& na, int& nb, int& s) const {
  if (idx < 0 || idx >= total())
    throw ConfigError("flat index outside the truncated space");
  s = idx % spin_dim;
  idx /= spin_dim;
  nb = idx % phonon_cutoff;
  na = idx / phonon_cutoff;
}

Matrix annihilation(int cutoff) {
  if (cutoff < 1) throw ConfigError("Fock cutoffs must be at least 1");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(int cutoff) { return annihilation(cutoff).adjoint(); }

Matrix number_op(int cutoff) {
  if (cutoff < 1) throw ConfigError("Fock cutoffs must be at least 1");
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = double(k);
  return n;
}

Matrix position_quadrature(int cutoff) {
  Matrix a = annihilation(cutoff);
  return a + a.adjoint().eval();
}

SpinOps spin_ops() {
  SpinOps s;
  s.sz = Matrix::Zero(2, 2);
  s.sz(0, 0) = 0.5;
  s.sz(1, 1) = -0.5;
  s.sp = Matrix::Zero(2, 2);
  s.sp(0, 1) = 1.0;  // |e><g|
  s.sm = s.sp.adjoint();
  s.id = Matrix::Identity(2, 2);
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

OperatorMatrix tensor3(const Matrix& photon_op, const Matrix& phonon_op,
                       const Matrix& spin_op, const HilbertDims& dims) {
  if (photon_op.rows() != dims.photon_cutoff ||
      photon_op.cols() != dims.photon_cutoff ||
      phonon_op.rows() != dims.phonon_cutoff ||
      phonon_op.cols() != dims.phonon_cutoff || spin_op.rows() != 2 ||
      spin_op.cols() != 2)
    throw ConfigError("tensor3 factor dimensions do not match the space");
  OperatorMatrix op;
  op.mat = kron(kron(photon_op, phonon_op), spin_op);
  op.dims = dims;
  return op;
}

StateVector basis_state(const HilbertDims& dims, int na, int nb, int s) {
  StateVector psi{Vector::Zero(dims.total()), dims};
  psi.amp(dims.index(na, nb, s)) = 1.0;
  return psi;
}

Matrix displacement_operator(Complex alpha, int cutoff) {
  Matrix b = annihilation(cutoff);
  Matrix arg = alpha * b.adjoint() - std::conj(alpha) * b;
  return arg.exp();
}

int displacement_cutoff_hint(Complex alpha) {
  double m = std::abs(alpha);
  return static_cast<int>(std::ceil(4.0 * (m * m + 3.0 * m + 2.0)));
}

TruncatedState coherent_state(Complex beta, int cutoff) {
  if (cutoff < 1) throw ConfigError("Fock cutoffs must be at least 1");
  Vector v(cutoff);
  v(0) = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n < cutoff; ++n) v(n) = v(n - 1) * beta / std::sqrt(double(n));
  double kept = v.squaredNorm();
  TruncatedState out{v / std::sqrt(kept), 1.0 - kept};
  return out;
}

TruncatedWeights thermal_weights(double beta_t, double omega, int cutoff) {
  if (cutoff < 1) throw ConfigError("Fock cutoffs must be at least 1");
  RealVector w(cutoff);
  double bw = beta_t * omega;
  if (!(bw > 0)) throw ConfigError("thermal weights need beta * omega > 0");
  double q = std::exp(-bw);  // geometric ratio
  double head = 1.0 - q;
  for (int n = 0; n < cutoff; ++n) w(n) = head * std::pow(q, n);
  double kept = w.sum();
  TruncatedWeights out{w / kept, 1.0 - kept};
  return out;
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& m) {
  Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace triqed
