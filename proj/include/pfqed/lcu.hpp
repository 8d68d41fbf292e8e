#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pfqed/dense.hpp"

namespace pfqed {

struct Unitary;

struct IdentityOp {};

// Diagonal +-1 pattern.
struct SignatureOp {
  std::vector<signed char> signs;
};

// Product of Pauli Z on the listed qubits of an n-qubit register; qubit 0 is least significant.
struct ZStringOp {
  std::vector<int> qubits;
  int n_qubits = 0;
};

// Periodic translation on a ring of `modulus` points: (A f)(x) = f(x + shift).
struct AdderOp {
  std::int64_t shift = 0;
  std::int64_t modulus = 1;
};

// Tensor product of single-qubit phase gates diag(1, exp(i angles[k])) on qubit k.
struct RotationStringOp {
  std::vector<double> angles;
};

// F^dagger * inner * F with F the unitary DFT of the inner dimension.
struct FourierConjugatedOp {
  std::shared_ptr<const Unitary> inner;
};

struct Unitary {
  std::variant<IdentityOp, SignatureOp, ZStringOp, AdderOp, RotationStringOp, FourierConjugatedOp>
      kind;

  /// Dense matrix of this unitary. `dim` is needed only for IdentityOp.
  DenseOperator dense(std::size_t dim) const;
  std::string kind_name() const;
};

Unitary fourier_conjugated(Unitary inner);

struct LcuTerm {
  double coeff = 0;
  Unitary unitary;
};

struct LcuDecomposition {
  std::vector<LcuTerm> terms;
  std::size_t target_dim = 0;

  double l1() const;
  std::size_t term_count() const { return terms.size(); }
};

// Signature-ladder decomposition for a real diagonal: identity plus one signature per distinct
// step. Values closer than 1e-12 are merged.
LcuDecomposition decompose_diagonal_real(std::span<const double> values);

// Bit-plane decomposition for an integer diagonal (negative entries handled by splitting).
LcuDecomposition decompose_diagonal_integer(std::span<const std::int64_t> values);

// Vector potential on one link, d = 2^zeta.
LcuDecomposition lcu_A(std::size_t d, double delta);
// Its square as identity, single-Z and ZZ strings under the Fourier conjugation.
LcuDecomposition lcu_A_squared(std::size_t d, double delta);
// Its square from the bit planes of diag(0, 1, 4, ..., (d-1)^2).
LcuDecomposition lcu_A_squared_bitplanes(std::size_t d, double delta);
// Electric energy on one link, basis index b = eps + Lambda.
LcuDecomposition lcu_E_squared(std::size_t lambda);
// Link raising operator as a single Fourier-conjugated rotation string.
LcuDecomposition lcu_U(std::size_t d);

// Centered finite-difference coefficients indexed k = -a..a (entry k + a).
std::vector<double> stencil_second(int a);
std::vector<double> stencil_first(int a);

// Laplacian and gradient along one axis of a periodic ring, as sums of adders.
LcuDecomposition lcu_laplacian(int a, double h, std::int64_t ring);
LcuDecomposition lcu_gradient(int a, double h, std::int64_t ring);

/// Sum of coeff * dense(unitary). Throws GuardExceeded above kDenseGuard.
DenseOperator reconstruct(const LcuDecomposition& dec);

nlohmann::json to_json(const Unitary& u);
nlohmann::json to_json(const LcuDecomposition& dec);

}  // namespace pfqed
