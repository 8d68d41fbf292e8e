#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace pfqed {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

// Entrywise tolerance used for every matrix equality check.
inline constexpr double kMatTol = 1e-10;

// Largest dimension for which exact singular values are computed.
inline constexpr std::size_t kDenseGuard = 4096;

DenseOperator identity(std::size_t dim);
DenseOperator zeros(std::size_t dim);
DenseOperator diagonal(std::span<const double> values);
DenseOperator diagonal(std::span<const cplx> values);

/// Largest singular value. Throws GuardExceeded when dim > kDenseGuard.
double spectral_norm(const DenseOperator& a);

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// Unitary DFT matrix with entries omega^{jk}/sqrt(d), omega = exp(2 pi i/d).
DenseOperator fourier(std::size_t d);

/// diag(1, omega, ..., omega^{d-1}).
DenseOperator clock(std::size_t d);

/// Cyclic shift |b> -> |b+k mod d>.
DenseOperator shift(std::size_t d, long long k = 1);

/// Single-qubit Paulis, index 0..3 = I, X, Y, Z.
DenseOperator pauli(int which);

/// Operator `op` acting on factor `slot` of a tensor product with the given factor dims.
/// Factor 0 is the most significant.
DenseOperator embed(const DenseOperator& op, std::span<const std::size_t> dims, std::size_t slot);

double max_abs_diff(const DenseOperator& a, const DenseOperator& b);
bool approx_equal(const DenseOperator& a, const DenseOperator& b, double tol = kMatTol);
bool is_hermitian(const DenseOperator& a, double tol = kMatTol);
bool is_unitary(const DenseOperator& a, double tol = kMatTol);

/// exp(i t H) for Hermitian H via eigendecomposition.
DenseOperator expi_hermitian(const DenseOperator& h, double t);

}  // namespace pfqed
