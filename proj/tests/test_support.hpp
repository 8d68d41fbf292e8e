#pragma once

#include <random>

#include "pfqed/dense.hpp"

namespace pfqed::test_support {

inline DenseOperator random_matrix(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseOperator m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline DenseOperator random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  DenseOperator m = random_matrix(rng, dim);
  return (m + m.adjoint()) / 2.0;
}

}  // namespace pfqed::test_support
