#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pfqed/block_encoding.hpp"
#include "pfqed/errors.hpp"
#include "pfqed/operators.hpp"

using namespace pfqed;

namespace {

LcuDecomposition identity_dec(double coeff, std::size_t dim) {
  LcuDecomposition dec;
  dec.target_dim = dim;
  dec.terms.push_back({coeff, Unitary{IdentityOp{}}});
  return dec;
}

LcuDecomposition half_i_half_x() {
  LcuDecomposition dec;
  dec.target_dim = 2;
  dec.terms.push_back({0.5, Unitary{IdentityOp{}}});
  // X as the Fourier conjugate of Z on two points.
  dec.terms.push_back({0.5, fourier_conjugated(Unitary{ZStringOp{{0}, 1}})});
  return dec;
}

// Full dense PREP^dag SELECT PREP, top-left block.
DenseOperator full_map_block(const BlockEncoding& be) {
  const auto anc = static_cast<Eigen::Index>(be.ancilla_dim());
  const auto sys = static_cast<Eigen::Index>(be.sys_dim);
  DenseOperator sel = DenseOperator::Identity(anc * sys, anc * sys);
  for (const auto& e : be.select) {
    const auto j = static_cast<Eigen::Index>(e.index);
    sel.block(j * sys, j * sys, sys, sys) = e.unitary;
  }
  const DenseOperator w = kron(prep_unitary(be), identity(be.sys_dim));
  const DenseOperator full = w.adjoint() * sel * w;
  EXPECT_TRUE(is_unitary(full, 1e-9));
  return full.block(0, 0, sys, sys);
}

}  // namespace

TEST(Encode, HalfIdentityHalfX) {
  const auto be = encode(half_i_half_x());
  EXPECT_DOUBLE_EQ(be.lambda, 1.0);
  const DenseOperator target = 0.5 * (identity(2) + pauli(1));
  EXPECT_LT(verify_block(be, target), 1e-12);
  EXPECT_LT(max_abs_diff(full_map_block(be), target), 1e-12);
}

TEST(Encode, SingleUnitary) {
  const auto be = encode(lcu_U(4));
  EXPECT_DOUBLE_EQ(be.lambda, 1.0);
  EXPECT_EQ(be.ancilla_width, 0u);
  EXPECT_LT(verify_block(be, op_U(2)), 1e-12);
}

TEST(Encode, ElectricEnergy) {
  const auto be = encode(lcu_E_squared(2));
  EXPECT_NEAR(be.lambda, 4, 1e-12);
  EXPECT_LT(verify_block(be, op_E2(2)), 1e-9);
  EXPECT_LT(max_abs_diff(full_map_block(be), op_E2(2) / 4.0), 1e-9);
}

TEST(Encode, SignedCoefficients) {
  const auto dec = lcu_A(8, 0.3);
  const auto be = encode(dec);
  EXPECT_LT(verify_block(be, reconstruct(dec)), 1e-9);
  EXPECT_LT(max_abs_diff(full_map_block(be), reconstruct(dec) / be.lambda), 1e-9);
}

TEST(Encode, WrongLambdaDeviatesByNorm) {
  auto be = encode(identity_dec(1.0, 2));
  be.lambda *= 2;
  EXPECT_NEAR(verify_block(be, identity(2)), 1.0, 1e-12);
}

TEST(Encode, RejectsZeroNorm) {
  LcuDecomposition dec;
  dec.target_dim = 2;
  dec.terms.push_back({0.0, Unitary{IdentityOp{}}});
  EXPECT_THROW(encode(dec), InvalidArgument);
  EXPECT_THROW(encode(LcuDecomposition{}), InvalidArgument);
}

TEST(ComposeSum, IdentityPair) {
  const auto id = encode(identity_dec(1.0, 2));
  const auto be = compose_sum({{1.0, id}, {1.0, id}});
  EXPECT_DOUBLE_EQ(be.lambda, 2);
  EXPECT_LT(max_abs_diff(block_contraction(be), identity(2)), 1e-12);
  EXPECT_LT(max_abs_diff(full_map_block(be), identity(2)), 1e-12);
}

TEST(ComposeSum, ElectricPlusRaising) {
  const auto e2 = encode(lcu_E_squared(2));
  const auto u = encode(lcu_U(4));
  const auto be = compose_sum({{0.5, e2}, {1.0, u}});
  EXPECT_NEAR(be.lambda, 3, 1e-12);
  const DenseOperator target = 0.5 * op_E2(2) + op_U(2);
  EXPECT_LT(verify_block(be, target), 1e-9);
  EXPECT_LT(max_abs_diff(full_map_block(be), target / 3.0), 1e-9);
}

TEST(ComposeSum, WeightHomogeneity) {
  const auto e2 = encode(lcu_E_squared(2));
  const auto u = encode(lcu_U(4));
  const auto a = compose_sum({{0.5, e2}, {1.0, u}});
  const auto b = compose_sum({{1.0, e2}, {2.0, u}});
  EXPECT_NEAR(b.lambda, 2 * a.lambda, 1e-12);
  EXPECT_LT(max_abs_diff(block_contraction(a), block_contraction(b)), 1e-12);
}

TEST(ComposeSum, AncillaWidthAddsSelector) {
  const auto e2 = encode(lcu_E_squared(2));
  std::vector<std::pair<double, BlockEncoding>> parts(4, {1.0, e2});
  const auto be = compose_sum(parts);
  EXPECT_EQ(be.ancilla_width, 2 + e2.ancilla_width);
  EXPECT_LT(max_abs_diff(block_contraction(be), block_contraction(e2)), 1e-12);
}

TEST(ComposeProduct, XSquaredIsIdentity) {
  LcuDecomposition only_x;
  only_x.target_dim = 2;
  only_x.terms.push_back({1.0, fourier_conjugated(Unitary{ZStringOp{{0}, 1}})});
  const auto bx = encode(only_x);
  const auto be = compose_product({bx, bx});
  EXPECT_LT(verify_block(be, identity(2)), 1e-12);
}

TEST(ComposeProduct, ElectricTimesRaising) {
  const auto e2 = encode(lcu_E_squared(2));
  const auto u = encode(lcu_U(4));
  const auto be = compose_product({e2, u});
  EXPECT_NEAR(be.lambda, 4, 1e-12);
  EXPECT_LT(verify_block(be, op_E2(2) * op_U(2)), 1e-9);
  EXPECT_LT(max_abs_diff(full_map_block(be), op_E2(2) * op_U(2) / 4.0), 1e-9);
}

TEST(ComposeProduct, Singleton) {
  const auto e2 = encode(lcu_E_squared(2));
  const auto be = compose_product({e2});
  EXPECT_EQ(be.lambda, e2.lambda);
  EXPECT_LT(max_abs_diff(block_contraction(be), block_contraction(e2)), 1e-15);
}

TEST(ComposeProduct, MismatchedDimsRejected) {
  EXPECT_THROW(compose_product({encode(lcu_U(4)), encode(lcu_U(8))}), InvalidArgument);
}
