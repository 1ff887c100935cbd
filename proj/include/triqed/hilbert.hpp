#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace triqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Composite space: cavity photon (Fock, cutoff Na) ⊗ mirror phonon (Fock,
// cutoff Nb) ⊗ atomic spin-1/2. Ordering is fixed everywhere in the library:
// photon slowest, phonon middle, spin fastest,
//   flat index = (na * Nb + nb) * 2 + s,   s = 0 -> |e>,  s = 1 -> |g>.
struct HilbertDims {
  int photon_cutoff;
  int phonon_cutoff;
  static constexpr int spin_dim = 2;

  HilbertDims(int photon, int phonon);

  int total() const { return photon_cutoff * phonon_cutoff * spin_dim; }
  int index(int na, int nb, int s) const;
  void unpack(int idx, int& na, int& nb, int& s) const;
};

// Dense operator plus the space it acts on. `dims` is set for operators on the
// composite space and left empty for single-factor building blocks.
struct OperatorMatrix {
  Matrix mat;
  std::optional<HilbertDims> dims;
  bool hermitian_hint = false;
};

struct StateVector {
  Vector amp;
  HilbertDims dims;
};

// Single-mode ladder operators on a truncated Fock space, <n-1|a|n> = sqrt(n).
Matrix annihilation(int cutoff);
Matrix creation(int cutoff);
Matrix number_op(int cutoff);
Matrix position_quadrature(int cutoff);  // b + b†

// Spin-1/2 operators in the (|e>, |g>) basis: sz = diag(+1/2, -1/2),
// sp |g> = |e>, sm = sp†.
struct SpinOps {
  Matrix sz, sp, sm, id;
};
SpinOps spin_ops();

Matrix kron(const Matrix& a, const Matrix& b);

// A ⊗ B ⊗ C with the ordering above; factor dimensions must match dims.
OperatorMatrix tensor3(const Matrix& photon_op, const Matrix& phonon_op,
                       const Matrix& spin_op, const HilbertDims& dims);

StateVector basis_state(const HilbertDims& dims, int na, int nb, int s);

// exp(alpha b† - conj(alpha) b) by Pade scaling-and-squaring. Deliberately a
// different route from both the closed-form coherent amplitudes and the
// eigendecomposition propagator, so the three can cross-check each other.
Matrix displacement_operator(Complex alpha, int cutoff);

// Cutoff at which the truncated displacement operator stays unitary to ~1e-8.
int displacement_cutoff_hint(Complex alpha);

// Truncated coherent state, renormalized to unit norm. `tail` is the Fock mass
// beyond the cutoff before renormalization.
struct TruncatedState {
  Vector amp;
  double tail;
};
TruncatedState coherent_state(Complex beta, int cutoff);

// Geometric thermal occupation weights (1 - e^{-bw}) e^{-bw n} at inverse
// temperature beta_t, renormalized over the truncation; `tail` as above.
struct TruncatedWeights {
  RealVector weights;
  double tail;
};
TruncatedWeights thermal_weights(double beta_t, double omega, int cutoff);

double hermiticity_defect(const Matrix& m);
double unitarity_defect(const Matrix& m);

}  // namespace triqed
