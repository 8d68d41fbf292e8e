#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pfqed/dense.hpp"
#include "pfqed/lcu.hpp"

namespace pfqed {

// Largest ancilla_dim * system_dim accepted by dense verification.
inline constexpr std::size_t kBlockGuard = std::size_t{1} << 14;

struct SelectEntry {
  std::size_t index = 0;
  DenseOperator unitary;
};

// PREP is any unitary whose first column is prep_state; SELECT applies `unitary` when the
// ancilla register holds `index` and the identity on indices without an entry.
struct BlockEncoding {
  double lambda = 0;
  std::size_t ancilla_width = 0;
  Eigen::VectorXcd prep_state;  // length 2^ancilla_width
  std::vector<SelectEntry> select;  // sorted by index, unique
  std::size_t sys_dim = 0;

  std::size_t ancilla_dim() const { return std::size_t{1} << ancilla_width; }
};

// Negative coefficients become a -1 phase on the selected unitary.
BlockEncoding encode(const LcuDecomposition& dec);

// Weighted sum: lambda = sum w_i lambda_i, selector amplitudes sqrt(w_i lambda_i / lambda).
BlockEncoding compose_sum(const std::vector<std::pair<double, BlockEncoding>>& parts);

// Product in list order: lambda = prod lambda_i, PREP is the tensor product of the PREP_i.
BlockEncoding compose_product(const std::vector<BlockEncoding>& parts);

// Householder completion of prep_state to a full unitary.
DenseOperator prep_unitary(const BlockEncoding& be);

// (<0| (x) I) PREP^dag SELECT PREP (|0> (x) I), evaluated blockwise from the full PREP unitary.
DenseOperator block_contraction(const BlockEncoding& be);

// Spectral norm of H - lambda * block_contraction(be).
double verify_block(const BlockEncoding& be, const DenseOperator& h);

}  // namespace pfqed
