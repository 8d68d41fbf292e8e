#include "pfqed/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

std::size_t width_for(std::size_t count) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < count) ++w;
  return w;
}

void check_size(std::size_t ancilla_dim, std::size_t sys_dim) {
  if (ancilla_dim > kBlockGuard || ancilla_dim * sys_dim > kBlockGuard) {
    throw GuardExceeded("block encoding exceeds ancilla_dim * system_dim <= 2^14");
  }
}

const DenseOperator* find_entry(const BlockEncoding& be, std::size_t index) {
  auto it = std::lower_bound(be.select.begin(), be.select.end(), index,
                             [](const SelectEntry& e, std::size_t i) { return e.index < i; });
  if (it == be.select.end() || it->index != index) return nullptr;
  return &it->unitary;
}

}  // namespace

BlockEncoding encode(const LcuDecomposition& dec) {
  if (dec.terms.empty()) throw InvalidArgument("cannot encode an empty decomposition");
  if (dec.target_dim > 512) throw GuardExceeded("encode limited to target_dim <= 512");
  const double l1 = dec.l1();
  if (!(l1 > 0)) throw InvalidArgument("cannot encode a decomposition with zero l1 norm");
  BlockEncoding be;
  be.lambda = l1;
  be.sys_dim = dec.target_dim;
  be.ancilla_width = width_for(dec.terms.size());
  check_size(be.ancilla_dim(), be.sys_dim);
  be.prep_state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(be.ancilla_dim()));
  for (std::size_t j = 0; j < dec.terms.size(); ++j) {
    const auto& term = dec.terms[j];
    be.prep_state(static_cast<Eigen::Index>(j)) = std::sqrt(std::abs(term.coeff) / l1);
    DenseOperator u = term.unitary.dense(dec.target_dim);
    if (term.coeff < 0) u = -u;
    be.select.push_back({j, std::move(u)});
  }
  return be;
}

BlockEncoding compose_sum(const std::vector<std::pair<double, BlockEncoding>>& parts) {
  if (parts.empty()) throw InvalidArgument("compose_sum needs at least one encoding");
  const std::size_t sys = parts.front().second.sys_dim;
  double total = 0;
  std::size_t inner_width = 0;
  for (const auto& [w, be] : parts) {
    if (!(w > 0)) throw InvalidArgument("sum weights must be positive");
    if (be.sys_dim != sys) throw InvalidArgument("encodings act on different system dimensions");
    total += w * be.lambda;
    inner_width = std::max(inner_width, be.ancilla_width);
  }
  BlockEncoding out;
  out.lambda = total;
  out.sys_dim = sys;
  out.ancilla_width = width_for(parts.size()) + inner_width;
  check_size(out.ancilla_dim(), sys);
  out.prep_state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out.ancilla_dim()));
  const std::size_t stride = std::size_t{1} << inner_width;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [w, be] = parts[i];
    const double amp = std::sqrt(w * be.lambda / total);
    for (std::size_t j = 0; j < be.ancilla_dim(); ++j) {
      out.prep_state(static_cast<Eigen::Index>(i * stride + j)) = amp * be.prep_state(static_cast<Eigen::Index>(j));
    }
    for (const auto& e : be.select) out.select.push_back({i * stride + e.index, e.unitary});
  }
  return out;
}

BlockEncoding compose_product(const std::vector<BlockEncoding>& parts) {
  if (parts.empty()) throw InvalidArgument("compose_product needs at least one encoding");
  if (parts.size() == 1) return parts.front();
  const std::size_t sys = parts.front().sys_dim;
  BlockEncoding out;
  out.lambda = 1;
  out.sys_dim = sys;
  for (const auto& be : parts) {
    if (be.sys_dim != sys) throw InvalidArgument("encodings act on different system dimensions");
    out.lambda *= be.lambda;
    out.ancilla_width += be.ancilla_width;
  }
  check_size(out.ancilla_dim(), sys);
  // First factor is the most significant ancilla block.
  out.prep_state = Eigen::VectorXcd::Ones(1);
  for (const auto& be : parts) out.prep_state = kron(out.prep_state, be.prep_state);
  for (std::size_t idx = 0; idx < out.ancilla_dim(); ++idx) {
    std::size_t rem = idx;
    std::vector<std::size_t> digits(parts.size());
    for (std::size_t k = parts.size(); k-- > 0;) {
      digits[k] = rem % parts[k].ancilla_dim();
      rem /= parts[k].ancilla_dim();
    }
    DenseOperator u = identity(sys);
    bool any = false;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (const DenseOperator* f = find_entry(parts[k], digits[k])) {
        u = u * *f;
        any = true;
      }
    }
    if (any) out.select.push_back({idx, std::move(u)});
  }
  return out;
}

DenseOperator prep_unitary(const BlockEncoding& be) {
  const auto n = static_cast<Eigen::Index>(be.ancilla_dim());
  if (be.prep_state.size() != n) throw InvalidArgument("prep_state length must be 2^ancilla_width");
  const Eigen::VectorXcd& p = be.prep_state;
  if (std::abs(p.norm() - 1) > 1e-9) throw InvalidArgument("prep_state must be normalized");
  const cplx phase = std::abs(p(0)) > 0 ? p(0) / std::abs(p(0)) : cplx(1, 0);
  Eigen::VectorXcd v = phase * Eigen::VectorXcd::Unit(n, 0) - p;
  const double vn = v.squaredNorm();
  DenseOperator h = DenseOperator::Identity(n, n);
  if (vn > 1e-30) h -= 2.0 * v * v.adjoint() / vn;
  // The reflection sends phase * e0 to p, so phase * H sends e0 to p.
  return phase * h;
}

DenseOperator block_contraction(const BlockEncoding& be) {
  check_size(be.ancilla_dim(), be.sys_dim);
  const DenseOperator w = prep_unitary(be);
  const auto sys = static_cast<Eigen::Index>(be.sys_dim);
  DenseOperator out = DenseOperator::Zero(sys, sys);
  for (std::size_t j = 0; j < be.ancilla_dim(); ++j) {
    // Column block j of (W (x) I) restricted to ancilla input 0 is W(j,0) I; SELECT maps it to
    // W(j,0) U_j; row block 0 of (W^dag (x) I) weights it by conj(W(j,0)).
    const cplx wj = w(static_cast<Eigen::Index>(j), 0);
    if (wj == cplx(0, 0)) continue;
    const double weight = std::norm(wj);
    if (const DenseOperator* u = find_entry(be, j)) {
      out += weight * *u;
    } else {
      out += weight * DenseOperator::Identity(sys, sys);
    }
  }
  return out;
}

double verify_block(const BlockEncoding& be, const DenseOperator& h) {
  if (static_cast<std::size_t>(h.rows()) != be.sys_dim) {
    throw InvalidArgument("operator dimension does not match the encoding");
  }
  return spectral_norm(h - be.lambda * block_contraction(be));
}

}  // namespace pfqed
