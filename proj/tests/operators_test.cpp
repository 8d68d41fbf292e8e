#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pfqed/errors.hpp"
#include "pfqed/operators.hpp"

using namespace pfqed;

namespace {

SimulationParams tiny(double N, double L, double lambda, double eta = 1, int a = 1,
                      std::vector<double> Z = {}) {
  ParamsInput raw;
  raw.N = N;
  raw.L = L;
  raw.Lambda = lambda;
  raw.eta = eta;
  raw.a = a;
  raw.K = static_cast<int>(Z.size());
  raw.Z = std::move(Z);
  return derive(raw);
}

}  // namespace

TEST(LinkOps, ElectricEnergyAndRaising) {
  const std::vector<double> e2 = {4, 1, 0, 1};
  EXPECT_TRUE(approx_equal(op_E2(2), diagonal(std::span<const double>(e2))));
  const DenseOperator u = op_U(2);
  Eigen::VectorXcd lowest = Eigen::VectorXcd::Zero(4);
  lowest(0) = 1;  // eps = -2
  Eigen::VectorXcd next = u * lowest;
  EXPECT_NEAR(std::abs(next(1)), 1.0, 1e-15);  // eps = -1
  EXPECT_TRUE(is_unitary(u));
}

TEST(LinkOps, VectorPotentialExponentiatesToRaising) {
  for (std::size_t lam : {2u, 4u, 8u}) {
    for (double delta : {0.3, 1.0}) {
      const auto a = op_A(lam, delta);
      EXPECT_TRUE(is_hermitian(a));
      EXPECT_LT(max_abs_diff(expi_hermitian(a, delta), op_U(lam)), 1e-9);
    }
  }
}

TEST(LinkOps, ElectricRaisingCommutator) {
  for (std::size_t lam : {2u, 4u, 8u}) {
    EXPECT_NEAR(spectral_norm(commutator(op_E2(lam), op_U(lam))), 2.0 * lam - 1, 1e-9);
  }
}

TEST(LinkOps, PlaquettePair) {
  const auto w = op_W2_pair(2);
  EXPECT_TRUE(is_hermitian(w, 1e-12));
  EXPECT_LE(spectral_norm(w), 2 + 1e-12);
  EXPECT_TRUE(approx_equal(commutator(w, w), zeros(256)));
  EXPECT_THROW(op_W2_pair(8), GuardExceeded);
}

TEST(Fragments, ElectronElectronDiagonal) {
  const auto p = tiny(8, 2, 2, 2);
  Support s;
  s.particles = 2;
  const auto h = op_fragment(FragmentId::Hvee, p, s);
  const Lattice lat(p);
  for (int q = 0; q < 8; ++q) {
    for (int r = 0; r < 8; ++r) {
      const auto a = lat.unflatten(q), b = lat.unflatten(r);
      double dist2 = 0;
      for (int i = 0; i < 3; ++i) dist2 += double(a[i] - b[i]) * double(a[i] - b[i]);
      const double expect = q == r ? 0.0 : 1.0 / (p.Delta * std::sqrt(dist2));
      EXPECT_NEAR(h(8 * q + r, 8 * q + r).real(), expect, 1e-14);
    }
  }
  EXPECT_TRUE(approx_equal(h, DenseOperator(h.diagonal().asDiagonal())));
}

TEST(Fragments, ElectricOnOneLink) {
  const auto p = tiny(8, 2, 2);
  Support s;
  s.links = {{{0, 0, 0}, 1}};
  const std::vector<double> e2 = {2, 0.5, 0, 0.5};
  EXPECT_TRUE(approx_equal(op_fragment(FragmentId::Hf1, p, s), diagonal(std::span<const double>(e2))));
}

TEST(Fragments, SpinTermHermitianAndBounded) {
  const auto p = tiny(27, 3, 2);
  Support s;
  s.particles = 1;
  s.spin = true;
  s.positions = false;
  s.links = {{{0, 1, 0}, 3}, {{0, 2, 0}, 3}, {{0, 0, 1}, 2}, {{0, 0, 2}, 2}};
  const auto h = op_fragment(FragmentId::Hs, p, s);
  EXPECT_EQ(retained_terms(FragmentId::Hs, p, s), 1u);
  EXPECT_TRUE(is_hermitian(h));
  EXPECT_GT(spectral_norm(h), 0);
  EXPECT_LE(spectral_norm(h), support_l1_bound(FragmentId::Hs, p, s));
}

TEST(Fragments, SingleCellFullInstance) {
  // N = 1 keeps every register: one particle with spin and position, three links.
  const auto p = tiny(1, 1, 2, 1, 1, {1});
  Support s;
  s.particles = 1;
  s.spin = true;
  s.links = {{{0, 0, 0}, 1}, {{0, 0, 0}, 2}, {{0, 0, 0}, 3}};
  for (auto id : kAllFragments) {
    EXPECT_DOUBLE_EQ(static_cast<double>(retained_terms(id, p, s)), total_terms(id, p)) << fragment_name(id);
    const auto h = op_fragment(id, p, s);
    EXPECT_TRUE(is_hermitian(h)) << fragment_name(id);
  }
}

TEST(Fragments, EveryFragmentHermitianAndBelowSupportBound) {
  const auto p = tiny(8, 2, 2, 2, 1, {1});
  Support s;
  s.particles = 1;
  s.spin = true;
  s.links = {{{0, 0, 0}, 1}, {{0, 0, 0}, 2}};
  for (auto id : kAllFragments) {
    const auto h = op_fragment(id, p, s);
    EXPECT_TRUE(is_hermitian(h)) << fragment_name(id);
    EXPECT_LE(spectral_norm(h), support_l1_bound(id, p, s) * (1 + 1e-12) + 1e-12) << fragment_name(id);
  }
}

TEST(Fragments, PlaquetteSupport) {
  const auto p = tiny(8, 2, 2);
  const auto pl = Lattice(p).plaquettes().front();
  Support s;
  s.links.assign(pl.links.begin(), pl.links.end());
  EXPECT_EQ(retained_terms(FragmentId::Hf2, p, s), 1u);
  const auto h = op_fragment(FragmentId::Hf2, p, s);
  EXPECT_TRUE(approx_equal(h, -op_W2_pair(2)));
}

TEST(Fragments, GuardAndValidation) {
  const auto p = tiny(8, 2, 2, 4);
  Support s;
  s.particles = 4;
  s.spin = true;
  EXPECT_THROW(op_fragment(FragmentId::Hvee, p, s), GuardExceeded);
  Support dup;
  dup.links = {{{0, 0, 0}, 1}, {{0, 0, 0}, 1}};
  EXPECT_THROW(op_fragment(FragmentId::Hf1, p, dup), InvalidArgument);
  ParamsInput raw;
  raw.N = 10;
  EXPECT_THROW(op_fragment(FragmentId::Hf1, derive_relaxed(raw), Support{}), InvalidArgument);
}

TEST(Coulomb, BruteForceValues) {
  EXPECT_NEAR(coulomb_sum(8, 1), 24 + 24 / std::sqrt(2.0) + 8 / std::sqrt(3.0), 1e-12);
  EXPECT_EQ(coulomb_sum(1, 1), 0);
  EXPECT_LE(coulomb_sum(27, 1), 2 * std::pow(27.0, 5.0 / 3.0));
  EXPECT_NEAR(coulomb_sum(8, 2), coulomb_sum(8, 1) / 2, 1e-12);
}
