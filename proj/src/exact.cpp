#include "triqed/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "triqed/errors.hpp"

namespace triqed {

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void require_resonance(const CouplingSet& c) {
  const double res = parametric_resonance_residual(c);
  if (std::abs(res) > 1e-10) {
    std::ostringstream msg;
    msg << "closed-form solution needs the parametric resonance g*xi = "
           "Delta*eta; relative residual "
        << res;
    throw PhysicsError(msg.str(), res);
  }
}

void require_branch(int j) {
  if (j != 1 && j != 2) throw ConfigError("branch index must be 1 or 2");
}

void require_labels(int na, int nb = 0) {
  if (na < 0 || nb < 0) throw ConfigError("Fock labels must be nonnegative");
}

// Ratio r with offdiag = r * diag as phonon operators; finite at resonance
// whenever the diagonal entry is not identically zero.
struct BranchRatio {
  bool finite = true;  // false when diag == 0 but the pair still couples
  double r = 0;        // valid when finite
  double edge_sign = 0;  // continuation sign for the diag == 0 corner
};

BranchRatio branch_ratio(const CouplingSet& c, int na) {
  const double root = std::sqrt(double(na) + 1.0);
  BranchRatio out;
  if (c.xi != 0) {
    out.r = c.eta * root / c.xi;
  } else if (c.Delta != 0) {
    out.r = c.g * root / c.Delta;
  } else {
    out.finite = false;
    out.edge_sign = c.eta != 0 ? sgn(c.eta) : sgn(c.g);
  }
  return out;
}

}  // namespace

Matrix AffineBosonOp::to_matrix(int cutoff) const {
  Matrix m = c0 * Matrix::Identity(cutoff, cutoff);
  if (cx != 0) m += cx * position_quadrature(cutoff);
  return m;
}

Matrix SubspaceHamiltonian::to_matrix(int phonon_cutoff) const {
  const int n = phonon_cutoff;
  Matrix h = h_const * Matrix::Identity(n, n) + h_number * number_op(n) +
             h_x.to_matrix(n);

  Matrix out = Matrix::Zero(2 * n, 2 * n);
  out.block(0, 0, n, n) = h + diag.to_matrix(n);
  out.block(n, n, n, n) = h;
  out.block(0, n, n, n) = offdiag.to_matrix(n);
  out.block(n, 0, n, n) = offdiag.to_matrix(n);
  return out;
}

SubspaceHamiltonian reduce_subspace(const CouplingSet& c, int na) {
  require_labels(na);
  const double root = std::sqrt(double(na) + 1.0);
  SubspaceHamiltonian s;
  s.na = na;
  s.h_const = 0.5 * c.omega_e + c.omega0 * na;
  s.h_number = c.omegaM;
  s.h_x = AffineBosonOp{0.0, -c.xi * na};
  s.diag = AffineBosonOp{c.Delta, -c.xi};
  s.offdiag = AffineBosonOp{root * c.g, -root * c.eta};
  return s;
}

FactorizeResult factorize(const CouplingSet& c, int na) {
  require_labels(na);
  FactorizeResult out;
  out.residual = parametric_resonance_residual(c);
  if (std::abs(out.residual) > 1e-10 || c.xi == 0) return out;

  FactorizedForm f;
  f.f = AffineBosonOp{c.Delta, -c.xi};
  const double r = c.eta * std::sqrt(double(na) + 1.0) / c.xi;
  f.m << 1.0, r, r, 0.0;
  f.r_na = std::sqrt(1.0 + 4.0 * r * r);
  f.lambda_minus = 0.5 * (1.0 - f.r_na);
  f.lambda_plus = 0.5 * (1.0 + f.r_na);
  out.form = f;
  return out;
}

BranchForm branch_form(const CouplingSet& c, int j, int na) {
  require_branch(j);
  require_labels(na);
  require_resonance(c);

  BranchForm bf;
  bf.omegaM = c.omegaM;
  bf.constant = 0.5 * c.omega_e + c.omega0 * na;
  bf.x_coeff = -c.xi * na;

  const double branch = j == 1 ? -1.0 : 1.0;  // (-1)^j
  const BranchRatio br = branch_ratio(c, na);
  if (br.finite) {
    const double big_r = std::sqrt(1.0 + 4.0 * br.r * br.r);
    const double lambda = 0.5 * (1.0 + branch * big_r);
    bf.constant += lambda * c.Delta;
    bf.x_coeff += -lambda * c.xi;
  } else {
    // xi = 0 and Delta = 0: the pair block is off-diagonal, with operator
    // eigenvalues +-sqrt(na+1)(g - eta x); the branch labels continue the
    // xi -> 0+ family, which attaches a sign(eta) factor
    const double root = std::sqrt(double(na) + 1.0);
    bf.constant += branch * br.edge_sign * root * c.g;
    bf.x_coeff += -branch * br.edge_sign * root * c.eta;
  }
  return bf;
}

Matrix BranchForm::to_matrix(int phonon_cutoff) const {
  return constant * Matrix::Identity(phonon_cutoff, phonon_cutoff) +
         omegaM * number_op(phonon_cutoff) +
         x_coeff * position_quadrature(phonon_cutoff);
}

double eigenvalue(const CouplingSet& c, int j, int na, int nb) {
  require_labels(na, nb);
  const BranchForm bf = branch_form(c, j, na);
  return bf.ground_energy() + nb * c.omegaM;
}

double displacement_alpha(const CouplingSet& c, int j, int na) {
  return branch_form(c, j, na).alpha();
}

double mixing_angle(const CouplingSet& c, int na) {
  require_labels(na);
  require_resonance(c);
  const BranchRatio br = branch_ratio(c, na);
  if (!br.finite) {
    if (br.edge_sign == 0) return M_PI / 2;  // fully decoupled pair
    return -br.edge_sign * M_PI / 4;
  }
  if (br.r == 0) return M_PI / 2;  // no pair coupling: branch 1 is |na, e>
  const double big_r = std::sqrt(1.0 + 4.0 * br.r * br.r);
  return std::atan(-(1.0 + big_r) / (2.0 * br.r));
}

DressedLevel dressed_level(const CouplingSet& c, int j, int na, int nb) {
  DressedLevel lvl;
  lvl.j = j;
  lvl.na = na;
  lvl.nb = nb;
  lvl.energy = eigenvalue(c, j, na, nb);
  lvl.alpha = displacement_alpha(c, j, na);
  lvl.theta = mixing_angle(c, na);
  const BranchRatio br = branch_ratio(c, na);
  if (br.finite)
    lvl.r_na = std::sqrt(1.0 + 4.0 * br.r * br.r);
  else
    lvl.r_na = br.edge_sign == 0 ? 1.0
                                 : std::numeric_limits<double>::infinity();
  return lvl;
}

Eigen::Vector2d dressed_amplitudes(const CouplingSet& c, int j, int na) {
  require_branch(j);
  const double theta = mixing_angle(c, na);
  Eigen::Vector2d v;
  if (j == 1)
    v << std::cos(theta), std::sin(theta);
  else
    v << -std::sin(theta), std::cos(theta);
  return v;
}

Vector displaced_fock_state(const CouplingSet& c, int j, int na, int nb,
                            int cutoff) {
  require_labels(na, nb);
  if (cutoff < nb + 1)
    throw ConfigError("phonon cutoff too small for the requested level");
  const double alpha = displacement_alpha(c, j, na);
  Matrix disp = displacement_operator(Complex(alpha, 0.0), cutoff);
  Vector v = disp.col(0);  // D(alpha)|0>
  const Matrix shifted =
      creation(cutoff) - alpha * Matrix::Identity(cutoff, cutoff);
  for (int k = 1; k <= nb; ++k) v = (shifted * v) / std::sqrt(double(k));
  return v / v.norm();
}

LightPressureSplit light_pressure_decomposition(const CouplingSet& c, int j,
                                                int na) {
  const BranchForm bf = branch_form(c, j, na);
  LightPressureSplit split;
  split.pressure = c.xi * c.xi * double(na) * double(na) / c.omegaM;
  split.triple = bf.x_coeff * bf.x_coeff / c.omegaM - split.pressure;
  return split;
}

std::vector<DressedLevel> levels_in_window(const CouplingSet& c, double lo,
                                           double hi, int na_max, int nb_max) {
  if (lo > hi) throw ConfigError("energy window must have lo <= hi");
  if (na_max < 0 || nb_max < 0)
    throw ConfigError("Fock labels must be nonnegative");
  std::vector<DressedLevel> out;
  for (int j = 1; j <= 2; ++j)
    for (int na = 0; na <= na_max; ++na)
      for (int nb = 0; nb <= nb_max; ++nb) {
        DressedLevel lvl = dressed_level(c, j, na, nb);
        if (lvl.energy >= lo && lvl.energy <= hi) out.push_back(lvl);
      }
  std::sort(out.begin(), out.end(),
            [](const DressedLevel& a, const DressedLevel& b) {
              return a.energy < b.energy;
            });
  return out;
}

}  // namespace triqed
