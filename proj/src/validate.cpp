#include "triqed/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "triqed/decoherence.hpp"
#include "triqed/dynamics.hpp"
#include "triqed/errors.hpp"
#include "triqed/exact.hpp"
#include "triqed/model.hpp"
#include "triqed/oracle.hpp"
#include "triqed/spinorbit.hpp"

namespace triqed {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

// Accumulates worst violation as a ratio err/tol, so one result can combine
// sub-checks with different tolerances (tolerance field is then 1.0).
struct Worst {
  double ratio = 0;
  void add(double err, double tol) { ratio = std::max(ratio, err / tol); }
};

// ---------------------------------------------------------------------------
// 1. Closed-form spectrum against dense diagonalization, bijectively inside
//    the truncation-safe window.

CouplingSet reference_couplings() {
  return CouplingSet::dimensionless(5.0, 4.8, 0.6, 0.1, 0.3);
}

// Unpaired ground tower |0, nb, g>: the photon-zero, atom-ground states decouple
// from every interaction term and stay exact eigenstates.
std::vector<double> ground_tower_levels(const CouplingSet& c, double lo,
                                        double hi, int nb_max) {
  std::vector<double> out;
  for (int nb = 0; nb <= nb_max; ++nb) {
    const double e = nb * c.omegaM - 0.5 * c.omega_e;
    if (e >= lo && e <= hi) out.push_back(e);
  }
  return out;
}

CheckResult check_exact_spectrum(double rel_tol) {
  CheckResult res;
  res.name = "exact-spectrum-vs-dense";
  res.tolerance = rel_tol;

  const CouplingSet c = reference_couplings();
  const HilbertDims dims(8, 60);
  const EigenSystem es = dense_eigensystem(build_full_hamiltonian(c, dims));
  const std::vector<bool> interior = interior_levels(es, dims);

  std::vector<double> targets;
  for (int j = 1; j <= 2; ++j)
    for (int na = 0; na <= 2; ++na)
      for (int nb = 0; nb <= 3; ++nb)
        targets.push_back(eigenvalue(c, j, na, nb));
  const auto [tmin_it, tmax_it] = std::minmax_element(targets.begin(), targets.end());
  const double margin = 1e-9 * std::max({1.0, std::abs(*tmin_it), std::abs(*tmax_it)});
  const double lo = *tmin_it - margin, hi = *tmax_it + margin;

  std::vector<double> closed;
  for (const DressedLevel& lvl : levels_in_window(c, lo, hi, 4, 55))
    closed.push_back(lvl.energy);
  for (double e : ground_tower_levels(c, lo, hi, 57)) closed.push_back(e);

  std::vector<double> numeric;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k)
    if (interior[size_t(k)] && es.eigenvalues(k) >= lo && es.eigenvalues(k) <= hi)
      numeric.push_back(es.eigenvalues(k));

  const MatchReport rep = spectrum_match(closed, numeric, rel_tol);
  res.achieved = rep.max_rel_err;
  res.pass = rep.bijective;
  std::ostringstream d;
  d << rep.matched << " levels matched bijectively in [" << fmt(lo) << ", "
    << fmt(hi) << "], max rel err " << fmt(rep.max_rel_err) << "; "
    << rep.unmatched_closed.size() << " closed / " << rep.unmatched_numeric.size()
    << " dense unmatched";
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 2. The displacement energy enters as -omegaM alpha^2; the -alpha^2 reading
//    must fail. Run at doubled frequencies where the two readings differ.

CheckResult check_energy_term(double rel_tol) {
  CheckResult res;
  res.name = "displacement-energy-term";
  res.tolerance = rel_tol;

  const CouplingSet c = reference_couplings().scaled(2.0);
  const HilbertDims dims(8, 60);
  const EigenSystem es = dense_eigensystem(build_full_hamiltonian(c, dims));
  const std::vector<bool> interior = interior_levels(es, dims);
  std::vector<double> numeric;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k)
    if (interior[size_t(k)]) numeric.push_back(es.eigenvalues(k));

  std::vector<double> implemented, literal;
  for (int j = 1; j <= 2; ++j)
    for (int na = 0; na <= 2; ++na) {
      const BranchForm bf = branch_form(c, j, na);
      const double alpha = bf.alpha();
      for (int nb = 0; nb <= 3; ++nb) {
        implemented.push_back(bf.ground_energy() + nb * c.omegaM);
        literal.push_back(bf.constant + nb * c.omegaM - alpha * alpha);
      }
    }

  const MatchReport rep_impl = spectrum_match(implemented, numeric, rel_tol);
  const MatchReport rep_lit = spectrum_match(literal, numeric, rel_tol);
  res.achieved = rep_impl.max_rel_err;
  res.pass = rep_impl.unmatched_closed.empty() && !rep_lit.unmatched_closed.empty();
  std::ostringstream d;
  d << "implemented reading: " << rep_impl.matched << "/" << implemented.size()
    << " matched (max rel err " << fmt(rep_impl.max_rel_err)
    << "); literal -alpha^2 reading: " << rep_lit.unmatched_closed.size() << "/"
    << literal.size() << " unmatched (negative control)";
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 3. Loschmidt echo: closed form against dense two-branch propagation, plus
//    the structural claims (beta independence, period, amplitude ordering).

CheckResult check_echo() {
  CheckResult res;
  res.name = "loschmidt-echo";
  res.tolerance = 1.0;  // combined ratio of sub-checks
  Worst worst;
  std::ostringstream d;

  const CouplingSet c = CouplingSet::dimensionless(5.0, 5.0, 0.0, 0.05, 0.5);
  const double period = 2.0 * M_PI / c.omegaM;

  struct SpecDef {
    int j1, na, j2, ma;
    Complex beta;
  };
  const std::vector<SpecDef> defs = {{1, 0, 2, 0, Complex(0, 0)},
                                     {1, 0, 1, 1, Complex(1, 0)},
                                     {2, 1, 2, 3, Complex(1, 1.5)},
                                     {1, 2, 2, 1, Complex(2, 0)}};
  const int cutoff = 160;
  double max_factor_err = 0, max_echo_err = 0, max_period_num = 0;
  for (const SpecDef& def : defs) {
    const EchoSpec spec = make_echo_spec(c, def.j1, def.na, def.j2, def.ma, def.beta);
    const EigenSystem es1 =
        dense_eigensystem(branch_form(c, def.j1, def.na).to_matrix(cutoff));
    const EigenSystem es2 =
        dense_eigensystem(branch_form(c, def.j2, def.ma).to_matrix(cutoff));
    const Vector psi0 = coherent_state(def.beta, cutoff).amp;
    for (int k = 0; k <= 60; ++k) {
      const double t = 2.0 * period * k / 60.0;
      const Complex overlap =
          (propagate(es1, psi0, t).adjoint() * propagate(es2, psi0, t))(0);
      const Complex closed = decoherence_factor(c, spec, t);
      max_factor_err = std::max(max_factor_err, std::abs(closed - overlap));
      max_echo_err = std::max(
          max_echo_err, std::abs(loschmidt_echo(c, spec, t) - std::norm(overlap)));
      max_period_num =
          std::max(max_period_num, std::abs(std::norm(overlap) -
                                            loschmidt_echo(c, spec, t + period)));
    }
  }
  worst.add(max_factor_err, 1e-8);
  worst.add(max_echo_err, 1e-8);
  worst.add(max_period_num, 1e-8);
  d << "dense overlap err " << fmt(max_factor_err) << ", echo err "
    << fmt(max_echo_err) << ", period err " << fmt(max_period_num);

  // beta independence of the echo modulus, measured on the dense overlap
  {
    const int big = 220;
    const EigenSystem es1 = dense_eigensystem(branch_form(c, 1, 0).to_matrix(big));
    const EigenSystem es2 = dense_eigensystem(branch_form(c, 2, 0).to_matrix(big));
    const std::vector<Complex> betas = {Complex(0, 0), Complex(1, 0), Complex(2, 3)};
    double spread = 0;
    for (int k = 1; k <= 40; ++k) {
      const double t = 2.0 * period * k / 40.0;
      std::vector<double> echoes;
      for (const Complex& beta : betas) {
        const Vector v = coherent_state(beta, big).amp;
        echoes.push_back(
            std::norm((propagate(es1, v, t).adjoint() * propagate(es2, v, t))(0)));
      }
      for (double e : echoes)
        spread = std::max(spread, std::abs(e - echoes.front()));
    }
    worst.add(spread, 1e-10);
    d << "; beta spread " << fmt(spread);
  }

  // closed-form periodicity is exact up to rounding
  {
    const EchoSpec spec = make_echo_spec(c, 1, 0, 1, 3, Complex(0, 0));
    double err = 0;
    for (int k = 0; k <= 50; ++k) {
      const double t = period * k / 25.0;
      err = std::max(err, std::abs(loschmidt_echo(c, spec, t + period) -
                                   loschmidt_echo(c, spec, t)));
    }
    worst.add(err, 1e-12);
  }

  // echo amplitude exponent grows with the photon-label separation
  {
    double violation = 0;
    const std::vector<std::pair<int, int>> branch_pairs = {{1, 1}, {2, 2}, {1, 2}};
    for (const auto& [j1, j2] : branch_pairs)
      for (int ma = 0; ma <= 3; ++ma) {
        double prev = -1;
        for (int na = ma; na <= 6; ++na) {
          const EchoSpec s = make_echo_spec(c, j1, na, j2, ma, Complex(0, 0));
          const double amp = 2.0 * s.delta_echo * s.delta_echo;
          if (prev >= 0) violation = std::max(violation, prev - amp);
          prev = amp;
        }
      }
    worst.add(violation, 1e-12);
    d << "; exponent ordering violation " << fmt(violation);
  }

  res.achieved = worst.ratio;
  res.pass = worst.ratio <= 1.0;
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 4. Commutator suite at 30x30 boson cutoffs.

double masked_max(const Matrix& m, const std::vector<char>& interior) {
  double worst = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!interior[size_t(i)]) continue;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (interior[size_t(j)])
        worst = std::max(worst, std::abs(m(i, j)));
  }
  return worst;
}

// [D, H] for diagonal D computed entrywise as (d_i - d_j) H_ij.
double diagonal_commutator_max(const RealVector& diag, const Matrix& h) {
  double worst = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j)
      worst = std::max(worst, std::abs((diag(i) - diag(j)) * h(i, j)));
  return worst;
}

CheckResult check_commutators() {
  CheckResult res;
  res.name = "commutator-suite";
  res.tolerance = 1e-12;

  const int n = 30;
  const JordanSchwingerOps ops = jordan_schwinger_ops(n, n);
  std::vector<char> interior(size_t(n) * n, 0);
  for (int na = 0; na < n; ++na)
    for (int nb = 0; nb < n; ++nb)
      interior[size_t(na) * n + nb] = (na <= n - 3 && nb <= n - 3) ? 1 : 0;

  double worst = 0;
  worst = std::max(worst, masked_max(ops.lp * ops.lm - ops.lm * ops.lp - 2.0 * ops.lz,
                                     interior));
  worst = std::max(worst,
                   masked_max(ops.lz * ops.lp - ops.lp * ops.lz - ops.lp, interior));
  worst = std::max(worst,
                   masked_max(ops.lz * ops.lm - ops.lm * ops.lz + ops.lm, interior));

  const SpinOps s = spin_ops();
  const auto dense_max = [](const Matrix& m) { return m.cwiseAbs().maxCoeff(); };
  worst = std::max(worst, dense_max(s.sz * s.sp - s.sp * s.sz - s.sp));
  worst = std::max(worst, dense_max(s.sz * s.sm - s.sm * s.sz + s.sm));
  worst = std::max(worst, dense_max(s.sp * s.sm - s.sm * s.sp - 2.0 * s.sz));
  worst = std::max(worst, dense_max(s.sp * s.sp));

  // conserved quantities of the two Hamiltonians; these selection rules hold
  // exactly even at the truncation edge
  const CouplingSet c = reference_couplings();
  const HilbertDims dims(n, n);
  const Matrix h_full = build_full_hamiltonian(c, dims).mat;
  const Matrix h_rwa = build_rwa_hamiltonian(c, dims).mat;
  RealVector n_exc(dims.total()), lz_sz(dims.total()), n_bosons(dims.total());
  for (int idx = 0; idx < dims.total(); ++idx) {
    int na, nb, sp;
    dims.unpack(idx, na, nb, sp);
    const double sz = sp == 0 ? 0.5 : -0.5;
    n_exc(idx) = na + sz;
    lz_sz(idx) = 0.5 * (na - nb) + sz;
    n_bosons(idx) = na + nb;
  }
  worst = std::max(worst, diagonal_commutator_max(n_exc, h_full));
  worst = std::max(worst, diagonal_commutator_max(lz_sz, h_rwa));
  worst = std::max(worst, diagonal_commutator_max(n_bosons, h_rwa));

  res.achieved = worst;
  res.pass = worst <= res.tolerance;
  res.detail = "max interior entrywise defect " + fmt(worst);
  return res;
}

// ---------------------------------------------------------------------------
// 5. Angular-momentum blocks against the dense near-resonant Hamiltonian.

CheckResult check_blocks() {
  CheckResult res;
  res.name = "spin-orbit-blocks";
  res.tolerance = 1e-8;

  const CouplingSet c = CouplingSet::dimensionless(2.0, 1.3, 0.0, 0.0, 0.08);
  const HilbertDims dims(16, 16);
  const OperatorMatrix h_op = build_rwa_hamiltonian(c, dims);
  const Matrix& h = h_op.mat;
  const EigenSystem es = dense_eigensystem(h_op);
  const std::vector<bool> interior = interior_levels(es, dims);

  // eigenvector residuals for every block with l <= 6 (half-integers included)
  double max_residual = 0;
  for (int twol = 0; twol <= 12; ++twol) {
    const double l = 0.5 * twol;
    for (const BlockSpectrum& b : assemble_blocks(c, l)) {
      Vector ve = Vector::Zero(dims.total());
      if (b.singleton) {
        // at l = 0 both singletons carry m = l, so classify by energy
        const double top_e =
            2.0 * c.Omega_half * l + c.kappa * l + 0.5 * c.omega_e;
        const bool top = std::abs(b.e_plus - top_e) <
                         1e-9 * std::max(1.0, std::abs(top_e));
        const int na = top ? int(std::lround(2 * l)) : 0;
        const int nb = top ? 0 : int(std::lround(2 * l));
        ve(dims.index(na, nb, top ? 0 : 1)) = 1.0;
        max_residual =
            std::max(max_residual, (h * ve - b.e_plus * ve).norm());
        continue;
      }
      const int na = int(std::lround(b.l + b.m));
      const int nb = int(std::lround(b.l - b.m));
      const int ie = dims.index(na, nb, 0);
      const int ig = dims.index(na + 1, nb - 1, 1);
      Vector vp = Vector::Zero(dims.total());
      vp(ie) = std::cos(b.theta);
      vp(ig) = std::sin(b.theta);
      Vector vm = Vector::Zero(dims.total());
      vm(ie) = -std::sin(b.theta);
      vm(ig) = std::cos(b.theta);
      max_residual = std::max(max_residual, (h * vp - b.e_plus * vp).norm());
      max_residual = std::max(max_residual, (h * vm - b.e_minus * vm).norm());
    }
  }

  // interior spectrum as a multiset: every block whose two components stay
  // clear of the top two Fock layers of either mode
  const int safe = dims.photon_cutoff - 3;  // labels 0..13 for cutoff 16
  std::vector<double> closed;
  for (int twol = 0; twol <= 2 * (2 * safe); ++twol) {
    const double l = 0.5 * twol;
    for (double m = -l; m < l - 0.5; m += 1.0) {
      const int na = int(std::lround(l + m));
      const int nb = int(std::lround(l - m));
      if (na + 1 > safe || nb > safe) continue;
      const BlockSpectrum b = block_2x2(c, l, m);
      closed.push_back(b.e_plus);
      closed.push_back(b.e_minus);
    }
    if (twol <= safe) {
      closed.push_back(block_2x2(c, l, l).e_plus);  // |l, l, e>
      closed.push_back(2.0 * c.Omega_half * l - c.kappa * l -
                       0.5 * c.omega_e);  // |l, -l, g>
    }
  }
  std::vector<double> numeric;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k)
    if (interior[size_t(k)]) numeric.push_back(es.eigenvalues(k));
  const MatchReport rep = spectrum_match(closed, numeric, res.tolerance);

  res.achieved = std::max(max_residual, rep.max_rel_err);
  res.pass = rep.bijective && max_residual <= res.tolerance;
  std::ostringstream d;
  d << "max eigenpair residual " << fmt(max_residual) << "; multiset "
    << rep.matched << " levels, bijective=" << (rep.bijective ? "yes" : "no")
    << ", max rel err " << fmt(rep.max_rel_err);
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 6. Large-l convergence towards the single-mode two-level model.

CheckResult check_quasiclassical() {
  CheckResult res;
  res.name = "quasi-classical-limit";
  res.tolerance = 1.0;  // combined ratio
  Worst worst;
  std::ostringstream d;

  const CouplingSet c = CouplingSet::dimensionless(2.0, 1.0, 0.0, 0.0, 0.01);
  const std::vector<double> ls = {10, 100, 1000};

  double bound_excess = 0, monotone_violation = 0;
  for (int n = 0; n <= 3; ++n) {
    double prev = -1;
    for (double l : ls) {
      const BlockSpectrum b = block_2x2(c, l, n - l);
      const std::vector<HPLevel> hp = hp_limit_spectrum(c, l, n);
      const double rel = std::abs(b.r_lm - hp.back().r_n) / hp.back().r_n;
      const double bound = 3.0 * (n + 1) / (2.0 * l);
      bound_excess = std::max(bound_excess, rel - bound);
      if (prev >= 0) monotone_violation = std::max(monotone_violation, rel - prev);
      prev = rel;
    }
  }
  worst.add(bound_excess, 1e-15);
  worst.add(monotone_violation, 1e-15);
  d << "gap-error bound excess " << fmt(bound_excess);

  // lowest five doublets at l = 1000 against the dense single-mode model
  const double l = 1000;
  const int cutoff = 12;
  const EigenSystem es = dense_eigensystem(build_jc_hamiltonian(c, l, cutoff));
  std::vector<double> numeric;
  for (Eigen::Index k = 0; k < es.eigenvectors.cols(); ++k) {
    double edge_mass = 0;
    for (int nb = cutoff - 2; nb < cutoff; ++nb)
      for (int s = 0; s < 2; ++s)
        edge_mass += std::norm(es.eigenvectors(nb * 2 + s, k));
    if (edge_mass <= 1e-6) numeric.push_back(es.eigenvalues(k));
  }
  std::vector<double> closed;
  for (int n = 0; n <= 4; ++n) {
    const BlockSpectrum b = block_2x2(c, l, n - l);
    closed.push_back(b.e_plus - 2.0 * l * c.omegaM);
    closed.push_back(b.e_minus - 2.0 * l * c.omegaM);
  }
  const MatchReport rep = spectrum_match(closed, numeric, 1e-3);
  worst.add(double(rep.unmatched_closed.size()), 0.5);
  d << "; dense single-mode match: " << rep.matched << "/10, max rel err "
    << fmt(rep.max_rel_err);

  res.achieved = worst.ratio;
  res.pass = worst.ratio <= 1.0;
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 7. Closed-form cell dynamics against dense density-matrix propagation.

CheckResult check_cells() {
  CheckResult res;
  res.name = "rabi-cell-dynamics";
  res.tolerance = 1.0;  // combined ratio
  Worst worst;
  std::ostringstream d;

  const CouplingSet c = CouplingSet::dimensionless(5.0, 4.1, 0.0, 0.0, 0.3);
  const HilbertDims dims(6, 5);

  std::mt19937 gen(20260823);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Eigen::MatrixXd w(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) = uni(gen);
  const InitialEnsemble ens = ensemble_custom(w);

  const double omega_min = rabi_cell(c, 0, 1).omega_rabi;
  const RealVector times = time_grid(0.0, 20.0 * 2.0 * M_PI / omega_min, 83);

  // dense reference
  const EigenSystem es = dense_eigensystem(build_rwa_hamiltonian(c, dims));
  Matrix rho0 = Matrix::Zero(dims.total(), dims.total());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int idx = dims.index(i, j, 0);
      rho0(idx, idx) = ens.weights(i, j);
    }
  const int n_max = 5;
  const TimeSeries w_closed = inversion_series(c, ens, times);
  const Eigen::MatrixXd p_closed = photon_distribution_series(c, ens, n_max, times);

  double w_err = 0, p_err = 0, sum_err = 0;
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    const Matrix rho = propagate_density(es, rho0, times(k));
    double w_dense = 0;
    RealVector p_dense = RealVector::Zero(n_max + 1);
    for (int idx = 0; idx < dims.total(); ++idx) {
      int na, nb, sp;
      dims.unpack(idx, na, nb, sp);
      const double pop = rho(idx, idx).real();
      w_dense += (sp == 0 ? 1.0 : -1.0) * pop;
      if (na <= n_max) p_dense(na) += pop;
    }
    w_err = std::max(w_err, std::abs(w_dense - w_closed.values(k)));
    for (int nn = 0; nn <= n_max; ++nn)
      p_err = std::max(p_err, std::abs(p_dense(nn) - p_closed(nn, k)));
    sum_err = std::max(sum_err, std::abs(p_closed.col(k).sum() - 1.0));
  }
  worst.add(w_err, 1e-8);
  worst.add(p_err, 1e-8);
  worst.add(sum_err, 1e-10);
  d << "inversion err " << fmt(w_err) << ", photon-distribution err "
    << fmt(p_err) << ", normalization err " << fmt(sum_err);

  // unitarity of every cell
  double unit_err = 0;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      const RabiCell cell = rabi_cell(c, i, j);
      for (Eigen::Index k = 0; k < times.size(); ++k) {
        const auto [le, lg] = cell_amplitudes(cell, times(k));
        unit_err = std::max(unit_err,
                            std::abs(std::norm(le) + std::norm(lg) - 1.0));
      }
    }
  worst.add(unit_err, 1e-12);

  // mirror vacuum: inversion pinned at one, photon distribution frozen
  Eigen::MatrixXd wv = Eigen::MatrixXd::Zero(4, 1);
  for (int i = 0; i < 4; ++i) wv(i, 0) = uni(gen);
  const InitialEnsemble vac = ensemble_custom(wv);
  double vac_err = 0;
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    vac_err = std::max(vac_err,
                       std::abs(population_inversion(c, vac, times(k)) - 1.0));
    for (int nn = 0; nn <= 4; ++nn)
      vac_err = std::max(vac_err,
                         std::abs(photon_distribution(c, vac, nn, times(k)) -
                                  photon_distribution(c, vac, nn, 0.0)));
  }
  worst.add(vac_err, 1e-12);
  d << "; vacuum-mirror drift " << fmt(vac_err);

  res.achieved = worst.ratio;
  res.pass = worst.ratio <= 1.0;
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 8. Collapse and revival, detected from the oscillation envelope.

struct Hump {
  double t = 0, height = 0, width = 0;
};

struct EnvelopeReport {
  RealVector env;
  double dt = 0;
  double burst_height = 0, burst_width = 0;
  double collapse_min = 0, collapse_t = 0;
  std::vector<Hump> revivals;
};

double hump_width(const RealVector& env, int peak, double level, double dt) {
  int left = peak, right = peak;
  while (left > 0 && env(left) >= level) --left;
  while (right < env.size() - 1 && env(right) >= level) ++right;
  return (right - left) * dt;
}

EnvelopeReport analyze_envelope(const RealVector& times, const RealVector& vals,
                                double window_t, double burst_end,
                                double collapse_lo, double collapse_hi,
                                double min_sep, double height_thresh_frac) {
  EnvelopeReport rep;
  const int n = int(times.size());
  rep.dt = times(1) - times(0);
  const int hw = std::max(1, int(std::lround(0.5 * window_t / rep.dt)));

  RealVector raw(n);
  for (int k = 0; k < n; ++k) {
    const int a = std::max(0, k - hw), b = std::min(n - 1, k + hw);
    double mx = vals(a), mn = vals(a);
    for (int i = a + 1; i <= b; ++i) {
      mx = std::max(mx, vals(i));
      mn = std::min(mn, vals(i));
    }
    raw(k) = 0.5 * (mx - mn);
  }
  rep.env.resize(n);
  for (int k = 0; k < n; ++k) {
    const int a = std::max(0, k - hw), b = std::min(n - 1, k + hw);
    rep.env(k) = raw.segment(a, b - a + 1).mean();
  }

  int burst_peak = 0;
  for (int k = 0; k < n && times(k) <= burst_end; ++k)
    if (rep.env(k) > rep.env(burst_peak)) burst_peak = k;
  rep.burst_height = rep.env(burst_peak);
  rep.burst_width =
      hump_width(rep.env, burst_peak, 0.5 * rep.burst_height, rep.dt);

  rep.collapse_min = rep.burst_height;
  for (int k = 0; k < n; ++k) {
    if (times(k) < collapse_lo || times(k) > collapse_hi) continue;
    if (rep.env(k) < rep.collapse_min) {
      rep.collapse_min = rep.env(k);
      rep.collapse_t = times(k);
    }
  }

  const int sep = std::max(1, int(std::lround(min_sep / rep.dt)));
  const double thresh = height_thresh_frac * rep.burst_height;
  for (int k = 0; k < n; ++k) {
    if (times(k) <= rep.collapse_t) continue;
    if (rep.env(k) < thresh) continue;
    const int a = std::max(0, k - sep), b = std::min(n - 1, k + sep);
    bool is_max = true;
    for (int i = a; i <= b && is_max; ++i)
      if (rep.env(i) > rep.env(k)) is_max = false;
    if (!is_max) continue;
    Hump h;
    h.t = times(k);
    h.height = rep.env(k);
    h.width = hump_width(rep.env, k, 0.5 * rep.env(k), rep.dt);
    if (rep.revivals.empty() || h.t - rep.revivals.back().t >= min_sep)
      rep.revivals.push_back(h);
  }
  return rep;
}

CheckResult check_collapse_revival() {
  CheckResult res;
  res.name = "collapse-revival";
  res.tolerance = 0;  // achieved counts failed detector assertions
  std::ostringstream d;
  int failures = 0;

  const CouplingSet c = CouplingSet::dimensionless(200.0, 199.001, 0.0, 0.0, 0.05);

  {  // coherent field over a lukewarm mirror
    const double temp_mean2 = 2.4663034623764317;  // mean occupation 2
    const InitialEnsemble ens = ensemble_coherent(c, Complex(4.0, 0.0), temp_mean2);
    const RealVector times = time_grid(0.0, 1200.0, 4801);
    const TimeSeries w = inversion_series(c, ens, times);
    const EnvelopeReport rep =
        analyze_envelope(times, w.values, 35.0, 30.0, 30.0, 400.0, 200.0, 0.12);

    const bool collapsed = rep.collapse_min <= 0.15 * rep.burst_height;
    const bool enough = rep.revivals.size() >= 2;
    bool lower_broader = enough;
    for (const Hump& h : rep.revivals) {
      if (h.height > 0.6 * rep.burst_height) lower_broader = false;
      if (h.width < 1.5 * rep.burst_width) lower_broader = false;
    }
    failures += !collapsed + !enough + !lower_broader;
    d << "coherent: burst " << fmt(rep.burst_height) << " (width "
      << fmt(rep.burst_width) << "), collapse " << fmt(rep.collapse_min)
      << " at t=" << fmt(rep.collapse_t) << ", revivals";
    for (const Hump& h : rep.revivals)
      d << " [t=" << fmt(h.t) << " h=" << fmt(h.height) << " w=" << fmt(h.width)
        << "]";
    d << (collapsed && enough && lower_broader ? " OK" : " FAIL");
  }

  {  // photon-number field over a hot mirror
    const double temp_mean20 = 20.49593431428785;  // mean occupation 20
    const InitialEnsemble ens = ensemble_fock(c, 10, temp_mean20);
    const RealVector times = time_grid(0.0, 600.0, 2401);
    const TimeSeries w = inversion_series(c, ens, times);
    const EnvelopeReport rep =
        analyze_envelope(times, w.values, 20.0, 20.0, 20.0, 120.0, 100.0, 0.30);

    const bool collapsed = rep.collapse_min <= 0.25 * rep.burst_height;
    const bool enough = rep.revivals.size() >= 2;
    failures += !collapsed + !enough;
    d << "; photon-number: burst " << fmt(rep.burst_height) << ", collapse "
      << fmt(rep.collapse_min) << ", " << rep.revivals.size() << " revivals"
      << (collapsed && enough ? " OK" : " FAIL");
  }

  res.achieved = failures;
  res.pass = failures == 0;
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------------------
// 9. Coupling constants derived from laboratory-scale inputs.

CheckResult check_derived_couplings() {
  CheckResult res;
  res.name = "derived-couplings";
  res.tolerance = 1.0;  // combined ratio
  Worst worst;
  std::ostringstream d;

  PhysicalConstants consts;
  RawPhysicalParams raw;
  raw.omega0 = 1e15;
  raw.omegaM = 1e9;
  raw.omega_e = 1e15;
  raw.mirror_mass = 1e-10;
  raw.cavity_length = 1e-6;
  raw.mode_volume = 1e-18;
  raw.atom_position = 0.5 * M_PI * consts.c_light / raw.omega0;  // k x0 = pi/2
  const double epsilon =
      std::sqrt(consts.hbar * raw.omega0 / (consts.eps0 * raw.mode_volume));
  raw.dipole_moment = -consts.hbar * raw.omega0 / epsilon;  // makes |g| = omega0

  const CouplingSet c = derive_couplings(raw);
  const double frozen_xi = 22962.706907069994;

  worst.add(std::abs(c.xi - frozen_xi) / frozen_xi, 1e-9);
  worst.add((c.xi >= 1e3 && c.xi <= 1e6) ? 0.0 : 1.0, 0.5);
  worst.add(std::abs(c.g - raw.omega0) / raw.omega0, 1e-12);
  worst.add(std::abs(c.eta + c.xi) / c.xi, 1e-12);
  d << "xi " << fmt(c.xi) << " rad/s, g " << fmt(c.g) << ", eta " << fmt(c.eta)
    << "; |eta + xi|/xi " << fmt(std::abs(c.eta + c.xi) / c.xi);

  res.achieved = worst.ratio;
  res.pass = worst.ratio <= 1.0;
  res.detail = d.str();
  return res;
}

}  // namespace

std::vector<CheckResult> run_acceptance_suite(const ValidationOptions& opts) {
  std::vector<CheckResult> out;
  out.push_back(check_exact_spectrum(opts.spectrum_rel_tol));
  out.push_back(check_energy_term(opts.spectrum_rel_tol));
  out.push_back(check_echo());
  out.push_back(check_commutators());
  out.push_back(check_blocks());
  out.push_back(check_quasiclassical());
  out.push_back(check_cells());
  out.push_back(check_collapse_revival());
  out.push_back(check_derived_couplings());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace triqed
