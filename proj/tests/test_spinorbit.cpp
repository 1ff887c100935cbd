#include <doctest.h>

#include <cmath>

#include "triqed/errors.hpp"
#include "triqed/model.hpp"
#include "triqed/spinorbit.hpp"

using namespace triqed;

namespace {
// omega0 = 2, omegaM = 1, omega_e = 1.3, eta = 0.08:
// kappa = 1, delta_so = 0.3, Omega_half = 1.5
CouplingSet scan_set() {
  return CouplingSet::dimensionless(2.0, 1.3, 0.0, 0.0, 0.08);
}
}  // namespace

TEST_CASE("angular labels map to occupations and back") {
  const AngularLabel lab = AngularLabel::from_occupations(3, 1);
  CHECK(lab.l == doctest::Approx(2.0));
  CHECK(lab.m == doctest::Approx(1.0));
  CHECK(lab.photon() == 3);
  CHECK(lab.phonon() == 1);
  for (int na = 0; na <= 4; ++na)
    for (int nb = 0; nb <= 4; ++nb) {
      const AngularLabel x = AngularLabel::from_occupations(na, nb);
      CHECK(x.photon() == na);
      CHECK(x.phonon() == nb);
      CHECK(valid_angular(x.l, x.m));
    }
  CHECK(valid_angular(1.5, 0.5));
  CHECK(valid_angular(1.5, -1.5));
  CHECK(!valid_angular(0.3, 0.1));   // 2l not an integer
  CHECK(!valid_angular(1.0, 1.5));   // |m| > l
  CHECK(!valid_angular(1.0, 0.5));   // l + m not an integer
  CHECK(!valid_angular(-1.0, 0.0));
}

TEST_CASE("two-mode realization satisfies the angular algebra") {
  const int cut = 12;
  const JordanSchwingerOps ops = jordan_schwinger_ops(cut, cut);
  // raising element on a deep interior state
  Vector v = Vector::Zero(cut * cut);
  v(2 * cut + 2) = 1.0;  // |na=2, nb=2>
  const Vector raised = ops.lp * v;
  CHECK(std::abs(raised(3 * cut + 1) - std::sqrt(3.0) * std::sqrt(2.0)) < 1e-12);

  const Matrix casimir =
      ops.lp * ops.lm + ops.lz * ops.lz - ops.lz;
  for (const auto& [na, nb] :
       std::vector<std::pair<int, int>>{{0, 0}, {2, 1}, {3, 3}, {6, 4}}) {
    Vector e = Vector::Zero(cut * cut);
    e(na * cut + nb) = 1.0;
    const double l = 0.5 * (na + nb);
    CHECK((casimir * e - l * (l + 1.0) * e).norm() < 1e-10);
    CHECK((ops.n_total * e - double(na + nb) * e).norm() < 1e-12);
  }
}

TEST_CASE("angular-momentum assembly reproduces the RWA Hamiltonian") {
  const CouplingSet c = scan_set();
  const HilbertDims dims(6, 6);
  const Matrix a = build_ls_hamiltonian(c, dims).mat;
  const Matrix b = build_rwa_hamiltonian(c, dims).mat;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("doublet block against its dense 2x2") {
  const CouplingSet c = scan_set();
  const BlockSpectrum b = block_2x2(c, 1.0, 0.0);
  CHECK(!b.singleton);
  CHECK(b.g_lm == doctest::Approx(2.0 * 0.08 * std::sqrt(2.0)));
  CHECK(b.r_lm == doctest::Approx(std::hypot(b.g_lm, 0.3)));

  Eigen::Matrix2d h2;
  const double l = 1.0, m = 0.0;
  h2 << 2.0 * c.Omega_half * l + c.kappa * m + 0.5 * c.omega_e, 0.5 * b.g_lm,
      0.5 * b.g_lm, 2.0 * c.Omega_half * l + c.kappa * (m + 1.0) - 0.5 * c.omega_e;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h2);
  CHECK(b.e_minus == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
  CHECK(b.e_plus == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));

  // |+> = (cos, sin) on {|l,m,e>, |l,m+1,g>}
  Eigen::Vector2d plus(std::cos(b.theta), std::sin(b.theta));
  CHECK((h2 * plus - b.e_plus * plus).norm() < 1e-12);
}

TEST_CASE("degenerate doublet mixes at forty-five degrees") {
  const CouplingSet c = CouplingSet::dimensionless(2.0, 1.0, 0.0, 0.0, 0.08);
  CHECK(c.delta_so == doctest::Approx(0.0));
  const BlockSpectrum b = block_2x2(c, 2.0, 1.0);
  CHECK(b.theta == doctest::Approx(M_PI / 4));
  CHECK(b.e_plus - b.e_minus == doctest::Approx(b.g_lm));
}

TEST_CASE("block eigenvectors embed as RWA eigenstates") {
  const CouplingSet c = scan_set();
  const HilbertDims dims(8, 8);
  const Matrix h = build_rwa_hamiltonian(c, dims).mat;
  for (const double m : {-1.0, 0.0}) {
    const BlockSpectrum b = block_2x2(c, 1.0, m);
    const int up = dims.index(int(1 + m), int(1 - m), 0);        // |l, m, e>
    const int dn = dims.index(int(1 + m) + 1, int(1 - m) - 1, 1);  // |l, m+1, g>
    Vector plus = Vector::Zero(dims.total());
    plus(up) = std::cos(b.theta);
    plus(dn) = std::sin(b.theta);
    CHECK((h * plus - b.e_plus * plus).norm() < 1e-10);
    Vector minus = Vector::Zero(dims.total());
    minus(up) = -std::sin(b.theta);
    minus(dn) = std::cos(b.theta);
    CHECK((h * minus - b.e_minus * minus).norm() < 1e-10);
  }
}

TEST_CASE("stretched states and manifold assembly") {
  const CouplingSet c = scan_set();
  const BlockSpectrum top = block_2x2(c, 1.0, 1.0);
  CHECK(top.singleton);
  CHECK(top.e_plus ==
        doctest::Approx(2.0 * c.Omega_half + c.kappa + 0.5 * c.omega_e));
  CHECK(std::isnan(top.e_minus));

  const auto blocks = assemble_blocks(c, 1.0);
  REQUIRE(blocks.size() == 4);
  CHECK(blocks[0].singleton);
  CHECK(blocks[0].m == doctest::Approx(-1.0));
  CHECK(blocks[0].e_plus ==
        doctest::Approx(2.0 * c.Omega_half - c.kappa - 0.5 * c.omega_e));
  CHECK(!blocks[1].singleton);
  CHECK(blocks[1].m == doctest::Approx(-1.0));
  CHECK(!blocks[2].singleton);
  CHECK(blocks[2].m == doctest::Approx(0.0));
  CHECK(blocks[3].singleton);
  CHECK(blocks[3].m == doctest::Approx(1.0));

  // l = 0 is the two uncoupled spin states
  const auto zero = assemble_blocks(c, 0.0);
  REQUIRE(zero.size() == 2);
  CHECK(zero[0].e_plus == doctest::Approx(-0.5 * c.omega_e));
  CHECK(zero[1].e_plus == doctest::Approx(0.5 * c.omega_e));

  // half-integer manifolds are allowed
  const auto half = assemble_blocks(c, 1.5);
  REQUIRE(half.size() == 5);
  const BlockSpectrum hb = block_2x2(c, 1.5, 0.5);
  CHECK(hb.g_lm == doctest::Approx(2.0 * 0.08 * std::sqrt(3.0)));

  CHECK_THROWS_AS(assemble_blocks(c, 0.3), ConfigError);
  CHECK_THROWS_AS(block_2x2(c, 1.0, 1.5), ConfigError);
}

TEST_CASE("spectrum scan sweeps the spin frequency") {
  const CouplingSet c = scan_set();
  RealVector grid(3);
  grid << 1.1, 1.3, 2.0;
  const auto rows = spectrum_scan(c, 1.0, grid);
  REQUIRE(rows.size() == 12);  // 3 grid points x (2l + 2) blocks
  const auto ref = assemble_blocks(c, 1.0);
  for (int k = 0; k < 4; ++k) {
    const ScanRow& row = rows[4 + k];  // omega_e = 1.3 slice
    CHECK(row.omega_e == doctest::Approx(1.3));
    CHECK(row.e_plus == doctest::Approx(ref[k].e_plus).epsilon(1e-14));
    CHECK(row.singleton == ref[k].singleton);
  }
  // detuning moves the doublet splitting through its minimum
  const auto wide = spectrum_scan(c, 1.0, grid);
  CHECK(wide[1].e_plus - wide[1].e_minus >= block_2x2(c, 1.0, -1.0).g_lm);
}

TEST_CASE("large-l limit levels and advisory") {
  const CouplingSet c = scan_set();
  std::optional<std::string> advisory;
  const auto levels = hp_limit_spectrum(c, 1000.0, 3, &advisory);
  CHECK(!advisory.has_value());
  REQUIRE(levels.size() == 4);
  for (int n = 0; n <= 3; ++n) {
    const HPLevel& lvl = levels[n];
    CHECK(lvl.n == n);
    CHECK(lvl.g_n == doctest::Approx(2.0 * 0.08 * std::sqrt(2000.0 * (n + 1))));
    CHECK(lvl.r_n == doctest::Approx(std::hypot(lvl.g_n, c.delta_so)));
    CHECK(lvl.e_plus - lvl.e_minus == doctest::Approx(lvl.r_n));
    CHECK(lvl.e_plus + lvl.e_minus == doctest::Approx((2 * n + 1) * c.kappa));
    CHECK(lvl.matched_m == doctest::Approx(n - 1000.0));
    // the matched doublet sits r_lm-close to the limit splitting
    const BlockSpectrum b = block_2x2(c, 1000.0, lvl.matched_m);
    CHECK(std::abs(b.r_lm - lvl.r_n) / lvl.r_n < 3.0 * (n + 1) / 2000.0);
  }
  hp_limit_spectrum(c, 10.0, 3, &advisory);
  CHECK(advisory.has_value());
  CHECK_THROWS_AS(hp_limit_spectrum(c, 0.0, 3), ConfigError);
  CHECK_THROWS_AS(hp_limit_spectrum(c, 10.0, -1), ConfigError);
}
