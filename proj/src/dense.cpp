#include "pfqed/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "pfqed/errors.hpp"

namespace pfqed {

DenseOperator identity(std::size_t dim) {
  return DenseOperator::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

DenseOperator zeros(std::size_t dim) {
  return DenseOperator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

DenseOperator diagonal(std::span<const double> values) {
  DenseOperator m = zeros(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

DenseOperator diagonal(std::span<const cplx> values) {
  DenseOperator m = zeros(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

namespace {

// Matrices at least this large try the block and sparsity shortcuts.
constexpr Eigen::Index kStructuredMin = 64;
constexpr double kSparseDensity = 0.05;

double dense_norm(const DenseOperator& a) {
  if (a.rows() > 16 && a.rows() == a.cols()) {
    // Normal matrices of the two kinds that dominate here: Hermitian operators and commutators
    // of Hermitian operators. Their norm is the largest eigenvalue magnitude.
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (max_abs_diff(a, a.adjoint()) <= 1e-13 * scale) {
      Eigen::SelfAdjointEigenSolver<DenseOperator> es(a, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    if (max_abs_diff(a, -a.adjoint()) <= 1e-13 * scale) {
      const DenseOperator h = cplx(0, 1) * a;
      Eigen::SelfAdjointEigenSolver<DenseOperator> es(h, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
  }
  if (a.rows() <= 16) {
    Eigen::JacobiSVD<DenseOperator> svd(a);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<DenseOperator> svd(a);
  return svd.singularValues()(0);
}

// Connected components of the graph i ~ j when a(i,j) or a(j,i) is nonzero. A symmetric
// permutation by components makes the matrix block diagonal.
std::vector<std::vector<Eigen::Index>> components(const DenseOperator& a) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& px = parent[static_cast<std::size_t>(x)];
      px = parent[static_cast<std::size_t>(px)];
      x = px;
    }
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && a(i, j) != cplx(0, 0)) {
        const Eigen::Index ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<std::size_t>(ri)] = rj;
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

bool is_diagonal(const DenseOperator& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j && a(i, j) != cplx(0, 0)) return false;
  return true;
}

double density(const DenseOperator& a) {
  const auto nnz = (a.array() != cplx(0, 0)).count();
  return static_cast<double>(nnz) / static_cast<double>(a.size());
}

}  // namespace

double spectral_norm(const DenseOperator& a) {
  if (static_cast<std::size_t>(a.rows()) > kDenseGuard ||
      static_cast<std::size_t>(a.cols()) > kDenseGuard) {
    throw GuardExceeded("spectral_norm: dimension " + std::to_string(a.rows()) +
                        " exceeds guard " + std::to_string(kDenseGuard));
  }
  if (a.size() == 0) return 0.0;
  if (a.rows() < kStructuredMin || a.rows() != a.cols()) return dense_norm(a);
  const auto parts = components(a);
  if (parts.size() == 1) return dense_norm(a);
  double best = 0;
  for (const auto& idx : parts) {
    const auto m = static_cast<Eigen::Index>(idx.size());
    if (m == 1) {
      best = std::max(best, std::abs(a(idx[0], idx[0])));
      continue;
    }
    DenseOperator block(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i)
        block(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    best = std::max(best, dense_norm(block));
  }
  return best;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("commutator: dimension mismatch");
  }
  if (a.rows() < kStructuredMin || a.rows() != a.cols()) return a * b - b * a;
  // [D, B]_ij = (d_i - d_j) B_ij for diagonal D.
  if (is_diagonal(a) || is_diagonal(b)) {
    const bool left = is_diagonal(a);
    const DenseOperator& d = left ? a : b;
    const DenseOperator& m = left ? b : a;
    DenseOperator out(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = (d(i, i) - d(j, j)) * m(i, j);
    return left ? out : DenseOperator(-out);
  }
  if (density(a) < kSparseDensity && density(b) < kSparseDensity) {
    const Eigen::SparseMatrix<cplx> sa = a.sparseView(), sb = b.sparseView();
    const Eigen::SparseMatrix<cplx> c = sa * sb - sb * sa;
    return DenseOperator(c.toDense());
  }
  return a * b - b * a;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator fourier(std::size_t d) {
  DenseOperator f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      // Reduce the exponent first so large d keeps full phase accuracy.
      const auto jk = (j * k) % d;
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(jk) / static_cast<double>(d);
      f(j, k) = std::polar(norm, phase);
    }
  }
  return f;
}

DenseOperator clock(std::size_t d) {
  DenseOperator c = zeros(d);
  for (std::size_t k = 0; k < d; ++k) {
    c(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
  }
  return c;
}

DenseOperator shift(std::size_t d, long long k) {
  DenseOperator s = zeros(d);
  const auto sd = static_cast<long long>(d);
  for (long long b = 0; b < sd; ++b) {
    const long long to = ((b + k) % sd + sd) % sd;
    s(to, b) = 1.0;
  }
  return s;
}

DenseOperator pauli(int which) {
  DenseOperator p = zeros(2);
  switch (which) {
    case 0: p(0, 0) = 1; p(1, 1) = 1; break;
    case 1: p(0, 1) = 1; p(1, 0) = 1; break;
    case 2: p(0, 1) = cplx(0, -1); p(1, 0) = cplx(0, 1); break;
    case 3: p(0, 0) = 1; p(1, 1) = -1; break;
    default: throw InvalidArgument("pauli: index must be 0..3");
  }
  return p;
}

DenseOperator embed(const DenseOperator& op, std::span<const std::size_t> dims, std::size_t slot) {
  if (slot >= dims.size() || static_cast<std::size_t>(op.rows()) != dims[slot]) {
    throw InvalidArgument("embed: operator does not match factor dimension");
  }
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < slot; ++i) left *= dims[i];
  for (std::size_t i = slot + 1; i < dims.size(); ++i) right *= dims[i];
  return kron(kron(identity(left), op), identity(right));
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("max_abs_diff: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const DenseOperator& a, const DenseOperator& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const DenseOperator& a, double tol) {
  return a.rows() == a.cols() && max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const DenseOperator& a, double tol) {
  return a.rows() == a.cols() && max_abs_diff(a * a.adjoint(), identity(a.rows())) <= tol;
}

DenseOperator expi_hermitian(const DenseOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::polar(1.0, t * ev(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace pfqed
