#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pfqed/dense.hpp"
#include "pfqed/errors.hpp"
#include "pfqed/lcu.hpp"

using namespace pfqed;
using std::numbers::pi;

namespace {

DenseOperator diag_of(const std::vector<double>& v) { return diagonal(std::span<const double>(v)); }

void expect_reconstructs_real(const std::vector<double>& v) {
  const auto dec = decompose_diagonal_real(v);
  EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(v))) << "size " << v.size();
  double maxabs = 0;
  for (double x : v) maxabs = std::max(maxabs, std::abs(x));
  EXPECT_LE(dec.l1(), maxabs * (1 + 1e-12) + 1e-12);
}

}  // namespace

TEST(DiagonalReal, HandExamples) {
  const std::vector<std::vector<double>> cases = {
      {0, 0, 1, 1}, {5, 5, 5}, {1, 2, 3}, {0, 1, 2, 3}, {0, 0, 0}, {7}, {-2, 1, 0, 3}};
  for (const auto& v : cases) expect_reconstructs_real(v);
}

TEST(DiagonalReal, ConstantIsSingleIdentity) {
  const auto dec = decompose_diagonal_real(std::vector<double>{5, 5, 5});
  ASSERT_EQ(dec.term_count(), 1u);
  EXPECT_EQ(dec.terms[0].unitary.kind_name(), "identity");
  EXPECT_DOUBLE_EQ(dec.l1(), 5);
}

TEST(DiagonalReal, NonnegativeHasOneTermPerDistinctValue) {
  const auto dec = decompose_diagonal_real(std::vector<double>{0, 1, 2, 3});
  EXPECT_EQ(dec.term_count(), 4u);
  EXPECT_NEAR(dec.l1(), 3, 1e-12);
}

TEST(DiagonalReal, RandomNonnegativeHasL1EqualToMax) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 10);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(1 + rep % 9);
    for (double& x : v) x = u(rng);
    const auto dec = decompose_diagonal_real(v);
    EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(v)));
    EXPECT_NEAR(dec.l1(), *std::max_element(v.begin(), v.end()), 1e-9);
  }
}

TEST(DiagonalReal, MixedSignL1IsLargerPart) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> v(2 + rep % 7);
    for (double& x : v) x = u(rng);
    const auto dec = decompose_diagonal_real(v);
    EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(v)));
    double p = 0, q = 0;
    for (double x : v) {
      p = std::max(p, x);
      q = std::max(q, -x);
    }
    EXPECT_NEAR(dec.l1(), std::max(p, q), 1e-9);
  }
}

TEST(DiagonalInteger, BitPlanes) {
  const std::vector<std::int64_t> v = {0, 1, 4, 9, 16, 25, 36, 49};
  const auto dec = decompose_diagonal_integer(v);
  std::vector<double> dv(v.begin(), v.end());
  EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(dv)));
  EXPECT_LE(dec.term_count(), 2u * 3u);
}

TEST(DiagonalInteger, Negative) {
  const std::vector<std::int64_t> v = {-3, 2, 0, 5};
  const auto dec = decompose_diagonal_integer(v);
  std::vector<double> dv(v.begin(), v.end());
  EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(dv)));
}

TEST(LinkOperators, VectorPotentialTwoLevels) {
  const double delta = 0.5;
  const auto dec = lcu_A(2, delta);
  const DenseOperator expect = (2 * pi / (2 * delta)) * 0.5 * (identity(2) - pauli(1));
  EXPECT_TRUE(approx_equal(reconstruct(dec), expect));
  EXPECT_NEAR(dec.l1(), pi / delta, 1e-12);
}

TEST(LinkOperators, VectorPotentialExponentiatesToShift) {
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    const double delta = 0.3;
    const auto a = reconstruct(lcu_A(d, delta));
    EXPECT_TRUE(is_hermitian(a));
    EXPECT_TRUE(approx_equal(expi_hermitian(a, delta), shift(d, 1), 1e-9)) << d;
    EXPECT_NEAR(lcu_A(d, delta).l1(), 2 * pi * (d - 1.0) / (d * delta), 1e-9);
  }
}

TEST(LinkOperators, SquaredFormsAgree) {
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    const double delta = 0.7;
    const auto a = reconstruct(lcu_A(d, delta));
    const auto z = lcu_A_squared(d, delta);
    const auto b = lcu_A_squared_bitplanes(d, delta);
    EXPECT_TRUE(approx_equal(reconstruct(z), a * a, 1e-8)) << d;
    EXPECT_TRUE(approx_equal(reconstruct(b), a * a, 1e-8)) << d;
    const double zeta = std::log2(static_cast<double>(d));
    EXPECT_EQ(z.term_count(), static_cast<std::size_t>(1 + zeta + zeta * (zeta - 1) / 2));
    EXPECT_NEAR(z.l1(), 4 * pi * pi * (d - 1.0) * (d - 1.0) / (d * d * delta * delta), 1e-8);
    EXPECT_LE(b.l1(), 4 * pi * pi / (delta * delta) * (1 + 1e-12));
    EXPECT_LE(b.term_count(), static_cast<std::size_t>(2 * zeta));
  }
}

TEST(LinkOperators, ElectricEnergyTwoLevels) {
  const auto dec = lcu_E_squared(2);
  const std::vector<double> expect = {4, 1, 0, 1};
  EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(expect)));
  EXPECT_NEAR(dec.l1(), 4, 1e-12);
}

TEST(LinkOperators, ElectricEnergyMatchesSquares) {
  for (std::size_t lam : {2u, 4u, 8u, 16u}) {
    std::vector<double> expect;
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(2 * lam); ++b) {
      const double e = static_cast<double>(b - static_cast<std::int64_t>(lam));
      expect.push_back(e * e);
    }
    const auto dec = lcu_E_squared(lam);
    EXPECT_TRUE(approx_equal(reconstruct(dec), diag_of(expect), 1e-8));
    EXPECT_NEAR(dec.l1(), static_cast<double>(lam * lam), 1e-8);
  }
}

TEST(LinkOperators, RaisingIsCyclicShift) {
  for (std::size_t d : {2u, 4u, 8u}) {
    const auto dec = lcu_U(d);
    ASSERT_EQ(dec.term_count(), 1u);
    EXPECT_TRUE(approx_equal(reconstruct(dec), shift(d, 1), 1e-10)) << d;
  }
}

TEST(LinkOperators, ElectricRaisingCommutatorNorm) {
  for (std::size_t lam : {2u, 4u, 8u}) {
    const auto e2 = reconstruct(lcu_E_squared(lam));
    const auto u = reconstruct(lcu_U(2 * lam));
    EXPECT_NEAR(spectral_norm(commutator(e2, u)), 2.0 * lam - 1, 1e-8);
  }
}

TEST(Stencil, SecondDerivativeExactOnPolynomials) {
  for (int a = 1; a <= 4; ++a) {
    const auto c = stencil_second(a);
    for (int deg = 0; deg <= 2 * a + 1; ++deg) {
      double s = 0;
      for (int k = -a; k <= a; ++k) s += c[k + a] * std::pow(static_cast<double>(k), deg);
      EXPECT_NEAR(s, deg == 2 ? 2.0 : 0.0, 1e-9) << "a=" << a << " deg=" << deg;
    }
  }
}

TEST(Stencil, FirstDerivativeExactOnPolynomials) {
  for (int a = 1; a <= 4; ++a) {
    const auto c = stencil_first(a);
    for (int deg = 0; deg <= 2 * a; ++deg) {
      double s = 0;
      for (int k = -a; k <= a; ++k) s += c[k + a] * std::pow(static_cast<double>(k), deg);
      EXPECT_NEAR(s, deg == 1 ? 1.0 : 0.0, 1e-9) << "a=" << a << " deg=" << deg;
    }
  }
}

TEST(Stencil, LowOrderValues) {
  const auto s = stencil_second(1);
  EXPECT_DOUBLE_EQ(s[0], 1);
  EXPECT_DOUBLE_EQ(s[1], -2);
  EXPECT_DOUBLE_EQ(s[2], 1);
  const auto f = stencil_first(1);
  EXPECT_DOUBLE_EQ(f[0], -0.5);
  EXPECT_DOUBLE_EQ(f[1], 0);
  EXPECT_DOUBLE_EQ(f[2], 0.5);
}

TEST(Stencil, LaplacianOnPlaneWave) {
  const std::int64_t ring = 16;
  const double h = 0.25;
  for (int a = 1; a <= 3; ++a) {
    const auto lap = reconstruct(lcu_laplacian(a, h, ring));
    const auto grad = reconstruct(lcu_gradient(a, h, ring));
    Eigen::VectorXcd f(ring);
    const double kx = 2 * pi / (ring * h);
    for (std::int64_t x = 0; x < ring; ++x) f(x) = std::exp(cplx(0, kx * x * h));
    Eigen::VectorXcd lf = lap * f, gf = grad * f;
    // Symbols of the centered stencils.
    double sym2 = 0, sym1 = 0;
    const auto c2 = stencil_second(a), c1 = stencil_first(a);
    for (int k = -a; k <= a; ++k) {
      sym2 += c2[k + a] * std::cos(kx * k * h);
      sym1 += c1[k + a] * std::sin(kx * k * h);
    }
    for (std::int64_t x = 0; x < ring; ++x) {
      EXPECT_NEAR(std::abs(lf(x) - sym2 / (h * h) * f(x)), 0, 1e-9);
      EXPECT_NEAR(std::abs(gf(x) - cplx(0, sym1 / h) * f(x)), 0, 1e-9);
    }
    EXPECT_NEAR(sym2 / (h * h), -kx * kx, kx * kx * 0.1);
  }
}

TEST(LcuJson, CarriesKindsAndL1) {
  const auto j = to_json(lcu_A(4, 1.0));
  EXPECT_EQ(j["terms"].size(), 3u);
  EXPECT_NEAR(j["l1"].get<double>(), 2 * pi * 3 / 4, 1e-12);
}
