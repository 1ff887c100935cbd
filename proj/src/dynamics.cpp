#include "triqed/dynamics.hpp"

#include <cmath>
#include <vector>

#include "triqed/errors.hpp"
#include "triqed/parallel.hpp"

namespace triqed {

namespace {

void require_cell_labels(int i, int j) {
  if (i < 0 || j < 0) throw ConfigError("cell labels must be nonnegative");
}

// smallest cutoff keeping the geometric tail q^N below tol
int geometric_cutoff(double q, double tol) {
  if (!(q > 0)) return 1;
  if (q >= 1) throw ConfigError("thermal weights need beta * omega > 0");
  int n = int(std::ceil(std::log(tol) / std::log(q)));
  return std::min(std::max(n, 1), 100000);
}

struct FieldWeights {
  RealVector w;
  double tail = 0;
};

FieldWeights thermal_field(const CouplingSet& c, double temperature,
                           double omega, double tol) {
  const double bw = thermal_beta_omega(c, temperature, omega);
  if (std::isinf(bw)) {
    FieldWeights f;
    f.w = RealVector::Zero(1);
    f.w(0) = 1.0;
    return f;
  }
  const int cutoff = geometric_cutoff(std::exp(-bw), tol);
  TruncatedWeights tw = thermal_weights(1.0, bw, cutoff);
  return FieldWeights{tw.weights, tw.tail};
}

FieldWeights poisson_field(Complex alpha, double tol) {
  const double mean = std::norm(alpha);
  FieldWeights f;
  if (mean == 0) {
    f.w = RealVector::Zero(1);
    f.w(0) = 1.0;
    return f;
  }
  std::vector<double> w;
  double term = std::exp(-mean);  // p_0
  double kept = term;
  w.push_back(term);
  const int hard_cap = 100000;
  while (1.0 - kept > tol && int(w.size()) < hard_cap) {
    term *= mean / double(w.size());
    w.push_back(term);
    kept += term;
  }
  f.w = Eigen::Map<RealVector>(w.data(), Eigen::Index(w.size()));
  f.tail = 1.0 - kept;
  f.w /= kept;
  return f;
}

InitialEnsemble combine(EnsembleKind kind, const FieldWeights& field,
                        const FieldWeights& mirror) {
  InitialEnsemble ens;
  ens.kind = kind;
  ens.weights = field.w * mirror.w.transpose();
  ens.tail_mass = 1.0 - (1.0 - field.tail) * (1.0 - mirror.tail);
  return ens;
}

// per-cell data for fast series evaluation
struct CellTerm {
  int i, j;
  double weight;
  double omega_rabi;
  double cos2phi, sin2phi;
};

std::vector<CellTerm> cell_terms(const CouplingSet& c,
                                 const InitialEnsemble& ens) {
  std::vector<CellTerm> terms;
  terms.reserve(size_t(ens.weights.size()));
  for (int i = 0; i < ens.weights.rows(); ++i)
    for (int j = 0; j < ens.weights.cols(); ++j) {
      const double w = ens.weights(i, j);
      if (w == 0) continue;
      const RabiCell cell = rabi_cell(c, i, j);
      CellTerm t;
      t.i = i;
      t.j = j;
      t.weight = w;
      t.omega_rabi = cell.omega_rabi;
      t.cos2phi = std::cos(2.0 * cell.phi);
      t.sin2phi = std::sin(2.0 * cell.phi);
      terms.push_back(t);
    }
  return terms;
}

}  // namespace

RabiCell rabi_cell(const CouplingSet& c, int i, int j) {
  require_cell_labels(i, j);
  RabiCell cell;
  cell.i = i;
  cell.j = j;
  cell.omega_free = c.omega0 * i + c.omegaM * j + 0.5 * c.kappa;
  if (j == 0) {
    cell.omega_rabi = std::abs(c.delta_so);
    cell.phi = 0;  // no partner state: bare phase evolution
    return cell;
  }
  const double coupling = 2.0 * c.eta * std::sqrt(double(j) * (i + 1.0));
  cell.omega_rabi = std::hypot(coupling, c.delta_so);
  if (cell.omega_rabi == 0)
    cell.phi = 0;
  else
    cell.phi = std::atan(coupling / (c.delta_so + cell.omega_rabi));
  return cell;
}

std::pair<Complex, Complex> cell_amplitudes(const RabiCell& cell, double t) {
  const double half = 0.5 * cell.omega_rabi * t;
  const double c = std::cos(half), s = std::sin(half);
  const Complex lambda_e(c, -std::cos(2.0 * cell.phi) * s);
  const Complex lambda_g(0.0, std::sin(2.0 * cell.phi) * s);
  return {lambda_e, lambda_g};
}

BranchState branch_state(const CouplingSet& c, int i, int j, double t) {
  const RabiCell cell = rabi_cell(c, i, j);
  const auto [lambda_e, lambda_g] = cell_amplitudes(cell, t);
  const Complex free = std::exp(Complex(0, -cell.omega_free * t));
  BranchState out;
  out.amp_e = free * lambda_e;
  out.amp_g = -free * lambda_g;  // printed relative minus on |i+1, j-1, g>
  out.free_phase = -cell.omega_free * t;
  return out;
}

InitialEnsemble ensemble_thermal(const CouplingSet& c, double temperature,
                                 double mass_tol) {
  const double half = 0.5 * mass_tol;
  return combine(EnsembleKind::thermal,
                 thermal_field(c, temperature, c.omega0, half),
                 thermal_field(c, temperature, c.omegaM, half));
}

InitialEnsemble ensemble_fock(const CouplingSet& c, int n0, double temperature,
                              double mass_tol) {
  if (n0 < 0) throw ConfigError("Fock labels must be nonnegative");
  FieldWeights field;
  field.w = RealVector::Zero(n0 + 1);
  field.w(n0) = 1.0;
  return combine(EnsembleKind::fock, field,
                 thermal_field(c, temperature, c.omegaM, 0.5 * mass_tol));
}

InitialEnsemble ensemble_coherent(const CouplingSet& c, Complex alpha,
                                  double temperature, double mass_tol) {
  const double half = 0.5 * mass_tol;
  return combine(EnsembleKind::coherent, poisson_field(alpha, half),
                 thermal_field(c, temperature, c.omegaM, half));
}

InitialEnsemble ensemble_custom(const Eigen::MatrixXd& weights) {
  if (weights.size() == 0) throw ConfigError("custom ensemble is empty");
  if ((weights.array() < 0).any())
    throw ConfigError("ensemble weights must be nonnegative");
  const double total = weights.sum();
  if (!(total > 0)) throw ConfigError("ensemble weights must not all vanish");
  InitialEnsemble ens;
  ens.kind = EnsembleKind::custom;
  ens.weights = weights / total;
  ens.tail_mass = 0;
  return ens;
}

double population_inversion(const CouplingSet& c, const InitialEnsemble& ens,
                            double t) {
  double w = 0;
  for (const CellTerm& cell : cell_terms(c, ens)) {
    const double s = std::sin(0.5 * cell.omega_rabi * t);
    const double s2 = s * s;
    const double cos4 =
        cell.cos2phi * cell.cos2phi - cell.sin2phi * cell.sin2phi;
    w += cell.weight * (1.0 - s2 + cos4 * s2);
  }
  return w;
}

double photon_distribution(const CouplingSet& c, const InitialEnsemble& ens,
                           int n, double t) {
  if (n < 0) throw ConfigError("photon label must be nonnegative");
  double p = 0;
  for (const CellTerm& cell : cell_terms(c, ens)) {
    const double s = std::sin(0.5 * cell.omega_rabi * t);
    const double s2 = s * s;
    if (cell.i == n)
      p += cell.weight * (1.0 - cell.sin2phi * cell.sin2phi * s2);
    else if (cell.i == n - 1)
      p += cell.weight * cell.sin2phi * cell.sin2phi * s2;
  }
  return p;
}

TimeSeries inversion_series(const CouplingSet& c, const InitialEnsemble& ens,
                            const RealVector& times) {
  const std::vector<CellTerm> terms = cell_terms(c, ens);
  TimeSeries series;
  series.times = times;
  series.values.resize(times.size());
  series.label = "W";
  parallel_for(int(times.size()), [&](int k) {
    double w = 0;
    const double t = times(k);
    for (const CellTerm& cell : terms) {
      const double s = std::sin(0.5 * cell.omega_rabi * t);
      const double s2 = s * s;
      const double cos4 =
          cell.cos2phi * cell.cos2phi - cell.sin2phi * cell.sin2phi;
      w += cell.weight * (1.0 - s2 + cos4 * s2);
    }
    series.values(k) = w;
  });
  return series;
}

Eigen::MatrixXd photon_distribution_series(const CouplingSet& c,
                                           const InitialEnsemble& ens,
                                           int n_max, const RealVector& times) {
  if (n_max < 0) throw ConfigError("photon label must be nonnegative");
  const std::vector<CellTerm> terms = cell_terms(c, ens);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n_max + 1, times.size());
  parallel_for(int(times.size()), [&](int k) {
    const double t = times(k);
    for (const CellTerm& cell : terms) {
      const double s = std::sin(0.5 * cell.omega_rabi * t);
      const double transfer = cell.sin2phi * cell.sin2phi * s * s;
      if (cell.i <= n_max) p(cell.i, k) += cell.weight * (1.0 - transfer);
      if (cell.i + 1 <= n_max) p(cell.i + 1, k) += cell.weight * transfer;
    }
  });
  return p;
}

}  // namespace triqed
