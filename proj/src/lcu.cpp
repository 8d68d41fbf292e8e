#include "pfqed/lcu.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

constexpr double kMergeTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

int log2_exact(std::size_t d, const char* what) {
  if (d == 0 || !std::has_single_bit(d)) {
    throw InvalidArgument(std::string(what) + ": dimension must be a power of two");
  }
  return std::countr_zero(d);
}

Unitary signature_of(std::vector<signed char> signs) {
  return Unitary{SignatureOp{std::move(signs)}};
}

Unitary zstring(std::vector<int> qubits, int n) {
  return Unitary{ZStringOp{std::move(qubits), n}};
}

// Splits a real diagonal into steps above zero; returns (identity coeff, signature terms).
// Each step contributes delta * B with B = (I - D)/2 and D = -1 where value >= level.
void add_steps(std::span<const double> values, double sign, double& id_coeff,
               std::vector<LcuTerm>& terms) {
  std::vector<double> levels;
  for (double v : values) {
    if (v > kMergeTol) levels.push_back(v);
  }
  std::sort(levels.begin(), levels.end());
  std::vector<double> distinct;
  for (double v : levels) {
    if (distinct.empty() || v - distinct.back() > kMergeTol) distinct.push_back(v);
  }
  double prev = 0.0;
  for (double level : distinct) {
    const double step = level - prev;
    std::vector<signed char> s(values.size());
    bool all = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const bool on = values[i] >= level - kMergeTol;
      s[i] = on ? -1 : 1;
      all = all && on;
    }
    if (all) {
      id_coeff += sign * step;
    } else {
      id_coeff += sign * step / 2;
      terms.push_back({-sign * step / 2, signature_of(std::move(s))});
    }
    prev = level;
  }
}

void add_bitplanes(std::span<const std::int64_t> mags, double sign, double& id_coeff,
                   std::vector<LcuTerm>& terms) {
  std::int64_t mx = 0;
  for (auto m : mags) mx = std::max(mx, m);
  for (int k = 0; (std::int64_t{1} << k) <= mx; ++k) {
    const double w = static_cast<double>(std::int64_t{1} << k);
    std::vector<signed char> s(mags.size());
    bool any = false, all = true;
    for (std::size_t i = 0; i < mags.size(); ++i) {
      const bool on = (mags[i] >> k) & 1;
      s[i] = on ? -1 : 1;
      any = any || on;
      all = all && on;
    }
    if (!any) continue;
    if (all) {
      id_coeff += sign * w;
    } else {
      id_coeff += sign * w / 2;
      terms.push_back({-sign * w / 2, signature_of(std::move(s))});
    }
  }
}

LcuDecomposition finish(double id_coeff, std::vector<LcuTerm> rest, std::size_t dim) {
  LcuDecomposition dec;
  dec.target_dim = dim;
  if (id_coeff != 0.0) dec.terms.push_back({id_coeff, Unitary{IdentityOp{}}});
  for (auto& t : rest) dec.terms.push_back(std::move(t));
  return dec;
}

// (a!)^2 / ((a+k)! (a-k)!) for 0 <= k <= a.
double factorial_ratio(int a, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(a - k + i) / static_cast<double>(a + i);
  return r;
}

LcuDecomposition adder_sum(const std::vector<double>& coeffs, double scale, std::int64_t ring,
                           bool skip_zero) {
  if (ring < 1) throw InvalidArgument("ring size must be >= 1");
  const int a = static_cast<int>(coeffs.size() / 2);
  LcuDecomposition dec;
  dec.target_dim = static_cast<std::size_t>(ring);
  for (int k = -a; k <= a; ++k) {
    if (skip_zero && k == 0) continue;
    dec.terms.push_back({scale * coeffs[static_cast<std::size_t>(k + a)],
                         Unitary{AdderOp{k, ring}}});
  }
  return dec;
}

}  // namespace

DenseOperator Unitary::dense(std::size_t dim) const {
  return std::visit(
      overloaded{
          [&](const IdentityOp&) { return identity(dim); },
          [](const SignatureOp& s) {
            std::vector<double> v(s.signs.begin(), s.signs.end());
            return diagonal(std::span<const double>(v));
          },
          [](const ZStringOp& z) {
            const std::size_t n = std::size_t{1} << z.n_qubits;
            std::vector<double> v(n, 1.0);
            for (std::size_t b = 0; b < n; ++b) {
              int parity = 0;
              for (int q : z.qubits) parity ^= static_cast<int>((b >> q) & 1);
              v[b] = parity ? -1.0 : 1.0;
            }
            return diagonal(std::span<const double>(v));
          },
          [](const AdderOp& a) {
            return shift(static_cast<std::size_t>(a.modulus), -a.shift);
          },
          [](const RotationStringOp& r) {
            const std::size_t n = std::size_t{1} << r.angles.size();
            std::vector<cplx> v(n);
            for (std::size_t b = 0; b < n; ++b) {
              double phase = 0;
              for (std::size_t k = 0; k < r.angles.size(); ++k) {
                if ((b >> k) & 1) phase += r.angles[k];
              }
              v[b] = std::polar(1.0, phase);
            }
            return diagonal(std::span<const cplx>(v));
          },
          [&](const FourierConjugatedOp& f) {
            const DenseOperator in = f.inner->dense(dim);
            const DenseOperator F = fourier(static_cast<std::size_t>(in.rows()));
            return DenseOperator(F.adjoint() * in * F);
          },
      },
      kind);
}

std::string Unitary::kind_name() const {
  return std::visit(overloaded{
                        [](const IdentityOp&) { return std::string("identity"); },
                        [](const SignatureOp&) { return std::string("signature"); },
                        [](const ZStringOp&) { return std::string("zstring"); },
                        [](const AdderOp&) { return std::string("adder"); },
                        [](const RotationStringOp&) { return std::string("rotation_string"); },
                        [](const FourierConjugatedOp&) { return std::string("fourier_conjugated"); },
                    },
                    kind);
}

Unitary fourier_conjugated(Unitary inner) {
  return Unitary{FourierConjugatedOp{std::make_shared<const Unitary>(std::move(inner))}};
}

double LcuDecomposition::l1() const {
  double s = 0;
  for (const auto& t : terms) s += std::abs(t.coeff);
  return s;
}

LcuDecomposition decompose_diagonal_real(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("decompose_diagonal_real: empty input");
  const bool nonneg = std::all_of(values.begin(), values.end(), [](double v) { return v >= 0; });
  double id = 0;
  std::vector<LcuTerm> terms;
  if (nonneg) {
    // Base level is the minimum; steps above it.
    const double base = *std::min_element(values.begin(), values.end());
    std::vector<double> shifted(values.begin(), values.end());
    for (auto& v : shifted) v -= base;
    id = base;
    add_steps(shifted, 1.0, id, terms);
  } else {
    std::vector<double> pos(values.size()), neg(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      pos[i] = std::max(values[i], 0.0);
      neg[i] = std::max(-values[i], 0.0);
    }
    add_steps(pos, 1.0, id, terms);
    add_steps(neg, -1.0, id, terms);
  }
  if (std::abs(id) <= kMergeTol) id = 0.0;
  return finish(id, std::move(terms), values.size());
}

LcuDecomposition decompose_diagonal_integer(std::span<const std::int64_t> values) {
  if (values.empty()) throw InvalidArgument("decompose_diagonal_integer: empty input");
  std::vector<std::int64_t> pos(values.size()), neg(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    pos[i] = std::max<std::int64_t>(values[i], 0);
    neg[i] = std::max<std::int64_t>(-values[i], 0);
  }
  double id = 0;
  std::vector<LcuTerm> terms;
  add_bitplanes(pos, 1.0, id, terms);
  add_bitplanes(neg, -1.0, id, terms);
  return finish(id, std::move(terms), values.size());
}

LcuDecomposition lcu_A(std::size_t d, double delta) {
  const int zeta = log2_exact(d, "lcu_A");
  const double pref = 2.0 * std::numbers::pi / (static_cast<double>(d) * delta);
  LcuDecomposition dec;
  dec.target_dim = d;
  dec.terms.push_back({pref * (static_cast<double>(d) - 1) / 2, Unitary{IdentityOp{}}});
  for (int i = 0; i < zeta; ++i) {
    dec.terms.push_back({-pref * std::ldexp(1.0, i - 1), fourier_conjugated(zstring({i}, zeta))});
  }
  return dec;
}

LcuDecomposition lcu_A_squared(std::size_t d, double delta) {
  const int zeta = log2_exact(d, "lcu_A_squared");
  const double dd = static_cast<double>(d);
  const double pref = std::numbers::pi * std::numbers::pi / (dd * dd * delta * delta);
  const double c0 = dd - 1;
  double sum4 = 0;
  for (int i = 0; i < zeta; ++i) sum4 += std::ldexp(1.0, 2 * i);
  LcuDecomposition dec;
  dec.target_dim = d;
  dec.terms.push_back({pref * (c0 * c0 + sum4), Unitary{IdentityOp{}}});
  for (int i = 0; i < zeta; ++i) {
    dec.terms.push_back({-pref * 2 * c0 * std::ldexp(1.0, i), fourier_conjugated(zstring({i}, zeta))});
  }
  for (int i = 0; i < zeta; ++i) {
    for (int j = i + 1; j < zeta; ++j) {
      dec.terms.push_back({pref * 2 * std::ldexp(1.0, i + j), fourier_conjugated(zstring({i, j}, zeta))});
    }
  }
  return dec;
}

LcuDecomposition lcu_A_squared_bitplanes(std::size_t d, double delta) {
  log2_exact(d, "lcu_A_squared_bitplanes");
  std::vector<std::int64_t> squares(d);
  for (std::size_t j = 0; j < d; ++j) squares[j] = static_cast<std::int64_t>(j * j);
  LcuDecomposition inner = decompose_diagonal_integer(squares);
  const double dd = static_cast<double>(d);
  const double scale = 4 * std::numbers::pi * std::numbers::pi / (dd * dd * delta * delta);
  for (auto& t : inner.terms) {
    t.coeff *= scale;
    if (!std::holds_alternative<IdentityOp>(t.unitary.kind)) {
      t.unitary = fourier_conjugated(std::move(t.unitary));
    }
  }
  return inner;
}

LcuDecomposition lcu_E_squared(std::size_t lambda) {
  const int zeta = 1 + log2_exact(lambda, "lcu_E_squared");
  LcuDecomposition dec;
  dec.target_dim = std::size_t{1} << zeta;
  dec.terms.push_back({(std::ldexp(1.0, 2 * zeta - 1) + 1) / 6, Unitary{IdentityOp{}}});
  for (int j = 0; j < zeta; ++j) dec.terms.push_back({std::ldexp(1.0, j - 1), zstring({j}, zeta)});
  for (int j = 0; j < zeta; ++j) {
    for (int k = j + 1; k < zeta; ++k) {
      dec.terms.push_back({std::ldexp(1.0, j + k - 1), zstring({j, k}, zeta)});
    }
  }
  return dec;
}

LcuDecomposition lcu_U(std::size_t d) {
  const int zeta = log2_exact(d, "lcu_U");
  RotationStringOp r;
  for (int k = 0; k < zeta; ++k) {
    r.angles.push_back(2 * std::numbers::pi * std::ldexp(1.0, k) / static_cast<double>(d));
  }
  LcuDecomposition dec;
  dec.target_dim = d;
  dec.terms.push_back({1.0, fourier_conjugated(Unitary{std::move(r)})});
  return dec;
}

std::vector<double> stencil_second(int a) {
  if (a < 1) throw InvalidArgument("stencil half-width must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(2 * a + 1), 0.0);
  double sum = 0;
  for (int k = 1; k <= a; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
    const double v = 2 * sign * factorial_ratio(a, k) / (static_cast<double>(k) * k);
    c[static_cast<std::size_t>(a + k)] = v;
    c[static_cast<std::size_t>(a - k)] = v;
    sum += 2 * v;
  }
  c[static_cast<std::size_t>(a)] = -sum;
  return c;
}

std::vector<double> stencil_first(int a) {
  if (a < 1) throw InvalidArgument("stencil half-width must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(2 * a + 1), 0.0);
  for (int k = 1; k <= a; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double v = sign * factorial_ratio(a, k) / static_cast<double>(k);
    c[static_cast<std::size_t>(a + k)] = v;
    c[static_cast<std::size_t>(a - k)] = -v;
  }
  return c;
}

LcuDecomposition lcu_laplacian(int a, double h, std::int64_t ring) {
  return adder_sum(stencil_second(a), 1.0 / (h * h), ring, false);
}

LcuDecomposition lcu_gradient(int a, double h, std::int64_t ring) {
  return adder_sum(stencil_first(a), 1.0 / h, ring, true);
}

DenseOperator reconstruct(const LcuDecomposition& dec) {
  if (dec.target_dim > kDenseGuard) {
    throw GuardExceeded("reconstruct: dimension " + std::to_string(dec.target_dim) +
                        " exceeds guard");
  }
  DenseOperator out = zeros(dec.target_dim);
  for (const auto& t : dec.terms) {
    const DenseOperator u = t.unitary.dense(dec.target_dim);
    if (static_cast<std::size_t>(u.rows()) != dec.target_dim) {
      throw InvalidArgument("reconstruct: term dimension does not match target");
    }
    out += t.coeff * u;
  }
  return out;
}

nlohmann::json to_json(const Unitary& u) {
  nlohmann::json payload = std::visit(
      overloaded{
          [](const IdentityOp&) { return nlohmann::json::object(); },
          [](const SignatureOp& s) {
            std::vector<int> v(s.signs.begin(), s.signs.end());
            return nlohmann::json{{"signs", v}};
          },
          [](const ZStringOp& z) { return nlohmann::json{{"qubits", z.qubits}, {"n_qubits", z.n_qubits}}; },
          [](const AdderOp& a) { return nlohmann::json{{"shift", a.shift}, {"modulus", a.modulus}}; },
          [](const RotationStringOp& r) { return nlohmann::json{{"angles", r.angles}}; },
          [](const FourierConjugatedOp& f) { return nlohmann::json{{"inner", to_json(*f.inner)}}; },
      },
      u.kind);
  return {{"kind", u.kind_name()}, {"payload", payload}};
}

nlohmann::json to_json(const LcuDecomposition& dec) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : dec.terms) {
    auto j = to_json(t.unitary);
    j["coeff"] = t.coeff;
    terms.push_back(j);
  }
  return {{"terms", terms}, {"l1", dec.l1()}, {"dim", dec.target_dim}};
}

}  // namespace pfqed
