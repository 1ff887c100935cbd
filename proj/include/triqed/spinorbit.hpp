#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triqed/model.hpp"

namespace triqed {

// Two-mode angular momentum labels: l = (na + nb)/2, m = (na - nb)/2, so
// |l, m> is the product Fock state with l+m photons and l-m phonons.
// Half-integer l is allowed; 2l and 2m must be integers with |m| <= l.
struct AngularLabel {
  double l = 0;
  double m = 0;
  int photon() const;
  int phonon() const;
  static AngularLabel from_occupations(int na, int nb);
};
bool valid_angular(double l, double m);

// L+ = a†b, L- = a b†, Lz = (a†a - b†b)/2 on the photon ⊗ phonon space
// (photon slow index), plus the total quantum number N = a†a + b†b.
struct JordanSchwingerOps {
  Matrix lp, lm, lz, n_total;
};
JordanSchwingerOps jordan_schwinger_ops(int photon_cutoff, int phonon_cutoff);

// The RWA Hamiltonian assembled through the angular-momentum form
//   H = 2 Omega_half (Lz + N/2)... written as Omega_half N + kappa Lz + we Sz
//       + eta (L- S+ + L+ S-);
// equals build_rwa_hamiltonian entrywise.
OperatorMatrix build_ls_hamiltonian(const CouplingSet& c, const HilbertDims& dims);

// 2x2 block on {|l, m, e>, |l, m+1, g>} for m in [-l, l-1]:
//   E_± = 2 Omega_half l + (m + 1/2) kappa ± r_lm / 2,
//   r_lm = sqrt(g_lm^2 + delta_so^2),  g_lm = 2 eta sqrt(l(l+1) - m(m+1)),
//   tan(theta) = g_lm / (delta_so + r_lm), |+> = cos|l,m,e> + sin|l,m+1,g>.
// m = l labels the unpaired top state |l, l, e> (singleton = true, e_plus
// holds the level, e_minus is NaN).
struct BlockSpectrum {
  double l = 0, m = 0;
  bool singleton = false;
  double g_lm = 0, r_lm = 0, theta = 0;
  double e_plus = 0, e_minus = 0;
};
BlockSpectrum block_2x2(const CouplingSet& c, double l, double m);

// Every doublet for m in [-l, l-1] plus the two unpaired edge states
// (|l, l, e> and |l, -l, g>); together they exhaust the 2(2l+1) levels of the
// fixed-l manifold.
std::vector<BlockSpectrum> assemble_blocks(const CouplingSet& c, double l);

struct ScanRow {
  double l = 0, m = 0;
  double omega_e = 0;
  double e_plus = 0, e_minus = 0;
  double g_lm = 0, theta = 0;
  bool singleton = false;
};
// Block levels of fixed l as omega_e sweeps (other frequencies held).
std::vector<ScanRow> spectrum_scan(const CouplingSet& c, double l,
                                   const RealVector& omega_e_grid);

// Large-l single-mode limit: g_n = 2 eta sqrt(2 l (n+1)),
// r_n = sqrt(g_n^2 + delta_so^2), E_±n = (n + 1/2) kappa ± r_n / 2, with the
// label correspondence n = l + m (so matched_m = n - l). Levels are quoted
// without the constant 2 l omegaM offset the matched doublets carry.
// Advisory set when n_max/l is not small.
struct HPLevel {
  int n = 0;
  double g_n = 0, r_n = 0;
  double e_plus = 0, e_minus = 0;
  double matched_m = 0;
};
std::vector<HPLevel> hp_limit_spectrum(const CouplingSet& c, double l, int n_max,
                                       std::optional<std::string>* advisory = nullptr);

}  // namespace triqed
