#pragma once

#include <optional>
#include <vector>

#include "triqed/model.hpp"

namespace triqed {

// c0 + cx (b + b†) acting on the phonon mode.
struct AffineBosonOp {
  double c0 = 0;
  double cx = 0;
  Matrix to_matrix(int cutoff) const;
};

// The full Hamiltonian restricted to the conserved-excitation pair
// {|na+1, g>, |na, e>} (photon and spin resolved, phonon operator-valued):
//   H_na = h + H',   h = h_const + h_number b†b + h_x,
//   H' = [[diag, offdiag], [offdiag, 0]]  on the pair, in that basis order.
struct SubspaceHamiltonian {
  int na = 0;
  double h_const = 0;    // we/2 + w0 na
  double h_number = 0;   // wM
  AffineBosonOp h_x;     // -xi na (b+b†)
  AffineBosonOp diag;    // Delta - xi (b+b†)
  AffineBosonOp offdiag; // sqrt(na+1) (g - eta (b+b†))

  // Dense matrix on (pair ⊗ phonon), index = comp * cutoff + nb with comp 0
  // for |na+1, g> and comp 1 for |na, e>.
  Matrix to_matrix(int phonon_cutoff) const;
};

SubspaceHamiltonian reduce_subspace(const CouplingSet& c, int na);

// H' = f(b,b†) M with f affine and M a constant symmetric 2x2. Exists exactly
// at the parametric resonance g xi = Delta eta; requires xi != 0 so M can be
// normalized to unit upper-left entry.
struct FactorizedForm {
  AffineBosonOp f;    // Delta - xi (b+b†)
  Eigen::Matrix2d m;  // [[1, r], [r, 0]], r = eta sqrt(na+1) / xi
  double lambda_minus = 0, lambda_plus = 0;  // (1 -+ r_na)/2, (1 + r_na)/2
  double r_na = 1;    // sqrt(1 + 4 eta^2 (na+1) / xi^2)
};
struct FactorizeResult {
  std::optional<FactorizedForm> form;
  double residual;  // parametric-resonance residual gating the factorization
};
FactorizeResult factorize(const CouplingSet& c, int na);

// Branch phonon Hamiltonian h + lambda_j f = constant + wM b†b + x_coeff (b+b†),
// a displaced oscillator. Branch j=1 carries lambda_minus, j=2 lambda_plus.
// Well defined also at xi = 0 (then via the +-offdiag limit, continued from
// xi -> 0+).
struct BranchForm {
  double constant = 0;
  double x_coeff = 0;
  double omegaM = 1;
  double alpha() const { return -x_coeff / omegaM; }
  double ground_energy() const { return constant - x_coeff * x_coeff / omegaM; }
  Matrix to_matrix(int phonon_cutoff) const;
};
BranchForm branch_form(const CouplingSet& c, int j, int na);

struct DressedLevel {
  int j = 1, na = 0, nb = 0;
  double energy = 0;
  double r_na = 1;
  double alpha = 0;
  double theta = 0;
};

// Closed-form level of branch (j, na) with phonon quantum nb:
//   E = w0 (na + 1/2) + ((-1)^j / 2) r_na Delta + nb wM - wM alpha^2.
// Throws PhysicsError (with the residual) away from parametric resonance.
double eigenvalue(const CouplingSet& c, int j, int na, int nb);

// alpha_{j,na} = (xi / 2 wM) (2 na + (-1)^j r_na + 1), the displaced phonon
// equilibrium of the branch.
double displacement_alpha(const CouplingSet& c, int j, int na);

// Pair mixing angle in (-pi/2, pi/2]: tan(theta) = 2 eta sqrt(na+1) / (xi - xi r_na).
// As eta -> 0 this tends to -pi/2 (branch 1 -> |na, e>, branch 2 -> |na+1, g>);
// at xi = 0 with eta != 0 the angle is -pi/4 by the same continuity.
double mixing_angle(const CouplingSet& c, int na);

DressedLevel dressed_level(const CouplingSet& c, int j, int na, int nb);

// Components of the dressed pair state on (|na+1, g>, |na, e>):
// branch 1 = (cos theta, sin theta), branch 2 = (-sin theta, cos theta).
Eigen::Vector2d dressed_amplitudes(const CouplingSet& c, int j, int na);

// Phonon ket (1/sqrt(nb!)) (b† - alpha)^nb D(alpha)|0>, built by that product
// route and then renormalized against truncation loss.
Vector displaced_fock_state(const CouplingSet& c, int j, int na, int nb, int cutoff);

// wM alpha^2 split into the pure light-pressure part xi^2 na^2 / wM and the
// triple-coupling remainder (xi^2 / 4 wM)(4 na + u)(u), u = (-1)^j r_na + 1.
struct LightPressureSplit {
  double pressure = 0;
  double triple = 0;
};
LightPressureSplit light_pressure_decomposition(const CouplingSet& c, int j, int na);

// All closed-form levels with energy in [lo, hi], na <= na_max, nb <= nb_max.
std::vector<DressedLevel> levels_in_window(const CouplingSet& c, double lo,
                                           double hi, int na_max, int nb_max);

}  // namespace triqed
