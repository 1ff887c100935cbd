#include <doctest.h>

#include <cmath>
#include <random>

#include "triqed/errors.hpp"
#include "triqed/hilbert.hpp"

using namespace triqed;

TEST_CASE("ladder operators on the truncated Fock space") {
  const int n = 6;
  const Matrix a = annihilation(n);
  const Matrix ad = creation(n);
  CHECK(a.rows() == n);
  for (int k = 1; k < n; ++k)
    CHECK(std::abs(a(k - 1, k) - std::sqrt(double(k))) < 1e-15);
  CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  const Matrix comm = a * ad - ad * a;
  for (int k = 0; k + 1 < n; ++k)  // the last diagonal entry is truncated
    CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);

  CHECK((number_op(n) - ad * a).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((position_quadrature(n) - (a + ad)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(annihilation(0), ConfigError);
}

TEST_CASE("flat index is photon-major with spin fastest") {
  const HilbertDims dims(3, 4);
  CHECK(dims.total() == 24);
  int expected = 0;
  for (int na = 0; na < 3; ++na)
    for (int nb = 0; nb < 4; ++nb)
      for (int s = 0; s < 2; ++s) {
        CHECK(dims.index(na, nb, s) == expected);
        int ua, ub, us;
        dims.unpack(expected, ua, ub, us);
        CHECK(ua == na);
        CHECK(ub == nb);
        CHECK(us == s);
        ++expected;
      }
  CHECK_THROWS_AS(HilbertDims(0, 4), ConfigError);
  CHECK_THROWS_AS(dims.index(3, 0, 0), ConfigError);
  CHECK_THROWS_AS(dims.index(0, 0, 2), ConfigError);
}

TEST_CASE("spin operators act in the (e, g) basis") {
  const SpinOps s = spin_ops();
  CHECK(s.sz(0, 0).real() == doctest::Approx(0.5));
  CHECK(s.sz(1, 1).real() == doctest::Approx(-0.5));
  CHECK(std::abs(s.sp(0, 1) - Complex(1, 0)) < 1e-15);  // sp |g> = |e>
  CHECK((s.sm - s.sp.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((s.sp * s.sm - s.sm * s.sp - 2.0 * s.sz).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor3 obeys the mixed-product rule") {
  const HilbertDims dims(3, 2);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const auto rnd = [&](int n) {
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = Complex(uni(gen), uni(gen));
    return m;
  };
  const Matrix a1 = rnd(3), a2 = rnd(3), b1 = rnd(2), b2 = rnd(2), c1 = rnd(2),
               c2 = rnd(2);
  const Matrix lhs =
      tensor3(a1, b1, c1, dims).mat * tensor3(a2, b2, c2, dims).mat;
  const Matrix rhs = tensor3(a1 * a2, b1 * b2, c1 * c2, dims).mat;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  // identity stack is the identity
  const Matrix id = tensor3(Matrix::Identity(3, 3), Matrix::Identity(2, 2),
                            Matrix::Identity(2, 2), dims)
                        .mat;
  CHECK((id - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("basis states are unit vectors at the flat index") {
  const HilbertDims dims(2, 3);
  const StateVector v = basis_state(dims, 1, 2, 0);
  CHECK(v.amp.size() == dims.total());
  CHECK(std::abs(v.amp.norm() - 1.0) < 1e-15);
  CHECK(std::abs(v.amp(dims.index(1, 2, 0)) - Complex(1, 0)) < 1e-15);
  CHECK_THROWS_AS(basis_state(dims, 2, 0, 0), ConfigError);
}

TEST_CASE("displacement operator is unitary at the hinted cutoff") {
  for (const Complex alpha : {Complex(0.5, 0.0), Complex(1.0, 0.5),
                              Complex(-2.0, 0.0)}) {
    const int cut = displacement_cutoff_hint(alpha);
    CHECK(unitarity_defect(displacement_operator(alpha, cut)) < 1e-8);
  }
  CHECK(displacement_cutoff_hint(Complex(0.5, 0)) == 15);
}

TEST_CASE("displaced vacuum reproduces the closed coherent amplitudes") {
  const Complex alpha(0.5, 0.0);
  const int cut = displacement_cutoff_hint(alpha);
  const Vector from_op = displacement_operator(alpha, cut).col(0);
  const TruncatedState cs = coherent_state(alpha, cut);
  CHECK((from_op - cs.amp).norm() < 1e-8);
  const double mean =
      (from_op.adjoint() * number_op(cut) * from_op)(0).real();
  CHECK(mean == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("coherent amplitudes, normalization, and tail bookkeeping") {
  const Complex beta(1.2, -0.3);
  const TruncatedState cs = coherent_state(beta, 40);
  CHECK(std::abs(cs.amp.norm() - 1.0) < 1e-14);
  CHECK(cs.tail >= 0);
  CHECK(cs.tail < 1e-12);
  for (const int n : {0, 3, 7}) {
    const Complex expected = std::exp(-0.5 * std::norm(beta)) *
                             std::pow(beta, n) /
                             std::sqrt(std::tgamma(double(n) + 1.0));
    CHECK(std::abs(cs.amp(n) - expected) < 1e-12);
  }
  // short truncation loses visible mass and reports it
  const TruncatedState clipped = coherent_state(Complex(2.0, 0.0), 4);
  CHECK(clipped.tail > 1e-3);
  CHECK(std::abs(clipped.amp.norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(coherent_state(beta, 0), ConfigError);
}

TEST_CASE("thermal weights form a normalized geometric ladder") {
  const TruncatedWeights tw = thermal_weights(2.0, 0.7, 30);
  CHECK(std::abs(tw.weights.sum() - 1.0) < 1e-14);
  const double q = std::exp(-1.4);
  for (int n = 0; n + 1 < 30; ++n)
    CHECK(tw.weights(n + 1) / tw.weights(n) == doctest::Approx(q).epsilon(1e-12));
  CHECK(tw.tail == doctest::Approx(std::pow(q, 30)).epsilon(1e-9));
  CHECK_THROWS_AS(thermal_weights(0.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS(thermal_weights(1.0, 1.0, 0), ConfigError);
}

TEST_CASE("hermiticity and unitarity defects") {
  const Matrix n4 = number_op(4);
  CHECK(hermiticity_defect(n4) < 1e-15);
  CHECK(hermiticity_defect(annihilation(4)) > 0.5);
  CHECK(unitarity_defect(Matrix::Identity(5, 5)) < 1e-15);
}
