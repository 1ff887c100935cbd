#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "triqed/dynamics.hpp"
#include "triqed/errors.hpp"

using namespace triqed;

namespace {
// omega0 = 5, omega_e = 4.1: kappa = 4, delta_so = 0.1
CouplingSet detuned() {
  return CouplingSet::dimensionless(5.0, 4.1, 0.0, 0.0, 0.3);
}
// omega_e = kappa = 4: resonant cells, phi = pi/4
CouplingSet resonant() {
  return CouplingSet::dimensionless(5.0, 4.0, 0.0, 0.0, 0.3);
}

void fft_pow2(std::vector<Complex>& a) {
  const size_t n = a.size();
  if (n == 1) return;
  std::vector<Complex> even(n / 2), odd(n / 2);
  for (size_t k = 0; k < n / 2; ++k) {
    even[k] = a[2 * k];
    odd[k] = a[2 * k + 1];
  }
  fft_pow2(even);
  fft_pow2(odd);
  for (size_t k = 0; k < n / 2; ++k) {
    const Complex w =
        std::exp(Complex(0, -2.0 * M_PI * double(k) / double(n))) * odd[k];
    a[k] = even[k] + w;
    a[k + n / 2] = even[k] - w;
  }
}
}  // namespace

TEST_CASE("cell frequencies and mixing") {
  const CouplingSet c = detuned();
  const RabiCell cell = rabi_cell(c, 0, 1);
  CHECK(cell.omega_rabi == doctest::Approx(std::sqrt(0.37)));
  CHECK(cell.phi == doctest::Approx(std::atan(0.6 / (0.1 + std::sqrt(0.37)))));
  CHECK(cell.omega_free == doctest::Approx(1.0 + 2.0));  // wM j + kappa/2

  const RabiCell res = rabi_cell(resonant(), 0, 1);
  CHECK(res.omega_rabi == doctest::Approx(0.6));
  CHECK(res.phi == doctest::Approx(M_PI / 4));

  const RabiCell bare = rabi_cell(c, 2, 0);
  CHECK(bare.omega_rabi == doctest::Approx(0.1));  // |delta_so|
  CHECK(bare.phi == doctest::Approx(0.0));
  CHECK(bare.omega_free == doctest::Approx(5.0 * 2 + 2.0));

  CHECK_THROWS_AS(rabi_cell(c, -1, 0), ConfigError);
  CHECK_THROWS_AS(rabi_cell(c, 0, -1), ConfigError);
}

TEST_CASE("cell amplitudes stay on the Bloch sphere") {
  const RabiCell cell = rabi_cell(detuned(), 1, 2);
  const auto [e0, g0] = cell_amplitudes(cell, 0.0);
  CHECK(std::abs(e0 - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(g0) < 1e-15);
  for (const double t : {0.3, 1.9, 7.7, 40.0}) {
    const auto [le, lg] = cell_amplitudes(cell, t);
    CHECK(std::norm(le) + std::norm(lg) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("branch state carries the free phase and the relative sign") {
  const CouplingSet c = detuned();
  const RabiCell cell = rabi_cell(c, 1, 2);
  const double t = 2.3;
  const auto [le, lg] = cell_amplitudes(cell, t);
  const BranchState b = branch_state(c, 1, 2, t);
  CHECK(b.free_phase == doctest::Approx(-cell.omega_free * t));
  const Complex free = std::exp(Complex(0, b.free_phase));
  CHECK(std::abs(b.amp_e - free * le) < 1e-14);
  CHECK(std::abs(b.amp_g + free * lg) < 1e-14);
}

TEST_CASE("single-cell inversion is a pure Rabi cosine") {
  const CouplingSet c = resonant();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(1, 2);
  w(0, 1) = 1.0;
  const InitialEnsemble ens = ensemble_custom(w);
  for (const double t : {0.0, 0.4, 1.1, 3.9, 12.0})
    CHECK(population_inversion(c, ens, t) ==
          doctest::Approx(std::cos(0.6 * t)).epsilon(1e-12));
}

TEST_CASE("built-in ensembles") {
  const CouplingSet c = detuned();

  const InitialEnsemble cold = ensemble_thermal(c, 0.0);
  CHECK(cold.kind == EnsembleKind::thermal);
  CHECK(cold.weights.rows() == 1);
  CHECK(cold.weights.cols() == 1);
  CHECK(cold.weights(0, 0) == doctest::Approx(1.0));
  CHECK(cold.tail_mass == doctest::Approx(0.0));

  const InitialEnsemble warm = ensemble_thermal(c, 2.0);
  CHECK(warm.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(warm.tail_mass < 1e-8);
  // geometric ratios in both indices: e^{-w0/T} across rows, e^{-wM/T} across cols
  CHECK(warm.weights(1, 0) / warm.weights(0, 0) ==
        doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  CHECK(warm.weights(0, 1) / warm.weights(0, 0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  const InitialEnsemble fock = ensemble_fock(c, 3, 2.0);
  CHECK(fock.kind == EnsembleKind::fock);
  CHECK(fock.weights.rows() == 4);
  CHECK(fock.weights.row(3).sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fock.weights.topRows(3).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK_THROWS_AS(ensemble_fock(c, -1, 2.0), ConfigError);

  const InitialEnsemble coh = ensemble_coherent(c, Complex(1.5, 0.0), 0.0);
  CHECK(coh.kind == EnsembleKind::coherent);
  CHECK(coh.weights.cols() == 1);
  for (int i = 0; i < 4; ++i)
    CHECK(coh.weights(i + 1, 0) / coh.weights(i, 0) ==
          doctest::Approx(2.25 / (i + 1)).epsilon(1e-12));
  CHECK(coh.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const InitialEnsemble vac = ensemble_coherent(c, Complex(0, 0), 0.0);
  CHECK(vac.weights.rows() == 1);
  CHECK(vac.weights(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("custom ensembles validate and normalize") {
  Eigen::MatrixXd w(2, 2);
  w << 1.0, 3.0, 0.0, 4.0;
  const InitialEnsemble ens = ensemble_custom(w);
  CHECK(ens.weights(0, 1) == doctest::Approx(0.375));
  CHECK(ens.weights.sum() == doctest::Approx(1.0));
  CHECK(ens.tail_mass == doctest::Approx(0.0));

  CHECK_THROWS_AS(ensemble_custom(Eigen::MatrixXd()), ConfigError);
  Eigen::MatrixXd neg(1, 2);
  neg << 0.5, -0.1;
  CHECK_THROWS_AS(ensemble_custom(neg), ConfigError);
  CHECK_THROWS_AS(ensemble_custom(Eigen::MatrixXd::Zero(2, 2)), ConfigError);
}

TEST_CASE("inversion bounds and vacuum pinning") {
  const CouplingSet c = detuned();
  const InitialEnsemble ens = ensemble_coherent(c, Complex(2.0, 0.0), 1.0);
  CHECK(population_inversion(c, ens, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (const double t : {0.5, 3.3, 17.0, 111.0}) {
    const double w = population_inversion(c, ens, t);
    CHECK(w <= 1.0 + 1e-12);
    CHECK(w >= -1.0 - 1e-12);
  }
  // mirror in its ground state: no quanta to exchange, only detuning phases
  Eigen::MatrixXd wv = Eigen::MatrixXd::Zero(3, 1);
  wv << 0.2, 0.5, 0.3;
  const InitialEnsemble frozen = ensemble_custom(wv);
  for (const double t : {0.7, 9.2})
    CHECK(population_inversion(c, frozen, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("photon distribution bookkeeping") {
  const CouplingSet c = detuned();
  Eigen::MatrixXd w(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) = 1.0 + i + 2 * j;
  const InitialEnsemble ens = ensemble_custom(w);

  // t = 0 reproduces the field marginal
  for (int n = 0; n < 4; ++n)
    CHECK(photon_distribution(c, ens, n, 0.0) ==
          doctest::Approx(ens.weights.row(n).sum()).epsilon(1e-12));

  for (const double t : {0.9, 4.2}) {
    double total = 0;
    for (int n = 0; n <= 4; ++n) {
      const double p = photon_distribution(c, ens, n, t);
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(photon_distribution(c, ens, -1, 0.0), ConfigError);
}

TEST_CASE("series evaluation matches the scalar calls") {
  const CouplingSet c = detuned();
  const InitialEnsemble ens = ensemble_fock(c, 2, 1.5);
  const RealVector times = time_grid(0.0, 30.0, 41);

  const TimeSeries inv = inversion_series(c, ens, times);
  CHECK(inv.label == "W");
  REQUIRE(inv.values.size() == 41);
  for (const int k : {0, 7, 23, 40})
    CHECK(inv.values(k) ==
          doctest::Approx(population_inversion(c, ens, times(k))).epsilon(1e-13));

  const Eigen::MatrixXd p = photon_distribution_series(c, ens, 3, times);
  REQUIRE(p.rows() == 4);
  REQUIRE(p.cols() == 41);
  for (const int k : {0, 11, 40})
    for (int n = 0; n <= 3; ++n)
      CHECK(p(n, k) ==
            doctest::Approx(photon_distribution(c, ens, n, times(k))).epsilon(1e-13));
  CHECK_THROWS_AS(photon_distribution_series(c, ens, -1, times), ConfigError);
}

TEST_CASE("inversion spectrum peaks at the cell Rabi frequencies") {
  const CouplingSet c = resonant();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(1, 5);
  w(0, 1) = 0.25;  // Omega = 0.6
  w(0, 4) = 0.75;  // Omega = 1.2
  const InitialEnsemble ens = ensemble_custom(w);

  const int n = 1024;
  const double t_total = 32.0 * 2.0 * M_PI / 0.6;  // 32 periods -> exact bins
  std::vector<Complex> samples(n);
  for (int k = 0; k < n; ++k)
    samples[size_t(k)] =
        population_inversion(c, ens, t_total * double(k) / double(n));
  fft_pow2(samples);

  // W(t) = 0.25 cos(0.6 t) + 0.75 cos(1.2 t): lines at bins 32 and 64 only
  CHECK(std::abs(samples[32]) == doctest::Approx(0.25 * n / 2).epsilon(1e-9));
  CHECK(std::abs(samples[64]) == doctest::Approx(0.75 * n / 2).epsilon(1e-9));
  for (int k = 0; k < n / 2; ++k) {
    if (k == 32 || k == 64) continue;
    CHECK(std::abs(samples[size_t(k)]) < 1e-6 * n);
  }
}
