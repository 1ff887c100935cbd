#include "triqed/spinorbit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "triqed/errors.hpp"

namespace triqed {

namespace {

bool near_half_integer(double v) {
  return std::abs(2.0 * v - std::round(2.0 * v)) < 1e-9;
}

}  // namespace

int AngularLabel::photon() const { return int(std::lround(l + m)); }
int AngularLabel::phonon() const { return int(std::lround(l - m)); }

AngularLabel AngularLabel::from_occupations(int na, int nb) {
  if (na < 0 || nb < 0) throw ConfigError("Fock labels must be nonnegative");
  return AngularLabel{0.5 * (na + nb), 0.5 * (na - nb)};
}

bool valid_angular(double l, double m) {
  if (!near_half_integer(l) || !near_half_integer(m)) return false;
  if (l < 0 || std::abs(m) > l + 1e-9) return false;
  // l and m must be both integer or both half-odd so occupations are integers
  return std::abs(std::round(l + m) - (l + m)) < 1e-9;
}

JordanSchwingerOps jordan_schwinger_ops(int photon_cutoff, int phonon_cutoff) {
  const Matrix a = annihilation(photon_cutoff);
  const Matrix na = number_op(photon_cutoff);
  const Matrix ia = Matrix::Identity(photon_cutoff, photon_cutoff);
  const Matrix b = annihilation(phonon_cutoff);
  const Matrix nb = number_op(phonon_cutoff);
  const Matrix ib = Matrix::Identity(phonon_cutoff, phonon_cutoff);

  JordanSchwingerOps ops;
  ops.lp = kron(a.adjoint(), b);
  ops.lm = kron(a, b.adjoint());
  ops.lz = 0.5 * (kron(na, ib) - kron(ia, nb));
  ops.n_total = kron(na, ib) + kron(ia, nb);
  return ops;
}

OperatorMatrix build_ls_hamiltonian(const CouplingSet& c,
                                    const HilbertDims& dims) {
  const JordanSchwingerOps ops =
      jordan_schwinger_ops(dims.photon_cutoff, dims.phonon_cutoff);
  const SpinOps s = spin_ops();
  const Matrix ipair =
      Matrix::Identity(ops.lz.rows(), ops.lz.cols());

  Matrix h = c.Omega_half * kron(ops.n_total, s.id) +
             c.kappa * kron(ops.lz, s.id) + c.omega_e * kron(ipair, s.sz);
  Matrix raise = c.eta * kron(ops.lm, s.sp);
  h += raise + raise.adjoint().eval();

  OperatorMatrix op{std::move(h), dims, true};
  return op;
}

BlockSpectrum block_2x2(const CouplingSet& c, double l, double m) {
  if (!valid_angular(l, m))
    throw ConfigError("invalid angular labels (need 2l, 2m integers, |m| <= l)");
  BlockSpectrum out;
  out.l = l;
  out.m = m;
  if (std::abs(m - l) < 1e-9) {
    // stretched |l, l, e>: no partner with one more photon in the manifold
    out.singleton = true;
    out.e_plus = 2.0 * c.Omega_half * l + c.kappa * l + 0.5 * c.omega_e;
    out.e_minus = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.g_lm = 2.0 * c.eta * std::sqrt(l * (l + 1.0) - m * (m + 1.0));
  out.r_lm = std::hypot(out.g_lm, c.delta_so);
  const double center = 2.0 * c.Omega_half * l + c.kappa * (m + 0.5);
  out.e_plus = center + 0.5 * out.r_lm;
  out.e_minus = center - 0.5 * out.r_lm;
  if (out.r_lm == 0)
    out.theta = 0;  // degenerate uncoupled doublet
  else
    out.theta = std::atan(out.g_lm / (c.delta_so + out.r_lm));
  return out;
}

std::vector<BlockSpectrum> assemble_blocks(const CouplingSet& c, double l) {
  if (!valid_angular(l, l))
    throw ConfigError("invalid angular manifold label l");
  std::vector<BlockSpectrum> out;
  // bottom unpaired state |l, -l, g>, the partner-less ground edge (marked by
  // singleton = true at m = -l; the doublet at m = -l pairs |l,-l,e> upward)
  BlockSpectrum bottom;
  bottom.l = l;
  bottom.m = -l;
  bottom.singleton = true;
  bottom.e_plus = 2.0 * c.Omega_half * l - c.kappa * l - 0.5 * c.omega_e;
  bottom.e_minus = std::numeric_limits<double>::quiet_NaN();
  out.push_back(bottom);

  for (double m = -l; m < l - 0.5; m += 1.0) out.push_back(block_2x2(c, l, m));
  out.push_back(block_2x2(c, l, l));  // stretched top |l, l, e>
  return out;
}

std::vector<ScanRow> spectrum_scan(const CouplingSet& c, double l,
                                   const RealVector& omega_e_grid) {
  std::vector<ScanRow> out;
  for (Eigen::Index k = 0; k < omega_e_grid.size(); ++k) {
    const CouplingSet ck = CouplingSet::with_frequencies(
        c.units, c.omega0, c.omegaM, omega_e_grid(k), c.g, c.xi, c.eta);
    for (const BlockSpectrum& b : assemble_blocks(ck, l)) {
      ScanRow row;
      row.l = b.l;
      row.m = b.m;
      row.omega_e = omega_e_grid(k);
      row.e_plus = b.e_plus;
      row.e_minus = b.e_minus;
      row.g_lm = b.g_lm;
      row.theta = b.theta;
      row.singleton = b.singleton;
      out.push_back(row);
    }
  }
  return out;
}

std::vector<HPLevel> hp_limit_spectrum(const CouplingSet& c, double l, int n_max,
                                       std::optional<std::string>* advisory) {
  if (!(l > 0)) throw ConfigError("excitation scale l must be positive");
  if (n_max < 0) throw ConfigError("n_max must be nonnegative");
  if (advisory) {
    *advisory = std::nullopt;
    if (n_max + 1 > 0.1 * l) {
      std::ostringstream msg;
      msg << "large-l limit is marginal: n_max + 1 = " << (n_max + 1)
          << " against l = " << l << "; relative errors scale like n/l";
      *advisory = msg.str();
    }
  }
  std::vector<HPLevel> out;
  for (int n = 0; n <= n_max; ++n) {
    HPLevel lvl;
    lvl.n = n;
    lvl.g_n = 2.0 * c.eta * std::sqrt(2.0 * l * (n + 1.0));
    lvl.r_n = std::hypot(lvl.g_n, c.delta_so);
    lvl.e_plus = (n + 0.5) * c.kappa + 0.5 * lvl.r_n;
    lvl.e_minus = (n + 0.5) * c.kappa - 0.5 * lvl.r_n;
    lvl.matched_m = n - l;
    out.push_back(lvl);
  }
  return out;
}

}  // namespace triqed
