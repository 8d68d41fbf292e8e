#include "pfqed/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

#include "pfqed/errors.hpp"
#include "pfqed/lcu.hpp"

namespace pfqed {

namespace {

using std::numbers::pi;

using Monomial = OperatorMonomial;

struct Layout {
  std::vector<std::size_t> dims;
  std::map<std::int64_t, std::size_t> link_slot;  // link id -> slot
  std::size_t link_offset = 0;
  bool spin = false;
  bool positions = true;
  std::size_t pos_slot(int j) const { return spin ? 2 * j + 1 : j; }
  std::size_t spin_slot(int j) const { return positions ? 2 * j : j; }
};

void require_lattice(const SimulationParams& p) {
  if (!p.lattice_valid) {
    throw InvalidArgument("dense fragments need an integral grid side and power-of-two Lambda");
  }
}

Layout make_layout(const SimulationParams& p, const Support& s) {
  require_lattice(p);
  if (s.particles < 0 || s.particles > p.eta) throw InvalidArgument("support particle count out of range");
  Layout lay;
  lay.spin = s.spin;
  lay.positions = s.positions;
  const auto n = static_cast<std::size_t>(p.N);
  for (int j = 0; j < s.particles; ++j) {
    if (s.spin) lay.dims.push_back(2);
    if (s.positions) lay.dims.push_back(n);
  }
  lay.link_offset = lay.dims.size();
  const Lattice lat(p);
  for (const auto& l : s.links) {
    if (l.mu < 1 || l.mu > 3) throw InvalidArgument("link direction must be 1..3");
    for (auto c : l.q) {
      if (c < 0 || c >= lat.side()) throw InvalidArgument("link site outside the grid");
    }
    const auto id = lat.link_id(l);
    if (lay.link_slot.count(id)) throw InvalidArgument("support lists a link twice");
    lay.link_slot[id] = lay.dims.size();
    lay.dims.push_back(static_cast<std::size_t>(p.d));
  }
  return lay;
}

std::size_t guarded_product(const std::vector<std::size_t>& dims) {
  std::size_t total = 1;
  for (auto d : dims) {
    total *= d;
    if (total > kDenseGuard) throw GuardExceeded("truncated support exceeds the dense guard");
  }
  return total;
}

DenseOperator realize(const Monomial& m, const std::vector<std::size_t>& dims) {
  std::vector<DenseOperator> per_slot;
  per_slot.reserve(dims.size());
  for (auto d : dims) per_slot.push_back(identity(d));
  for (const auto& f : m.factors) per_slot[f.slot] = per_slot[f.slot] * f.op;
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (const auto& op : per_slot) out = kron(out, op);
  return m.coeff * out;
}

// Stencil operator along axis mu of the periodic grid, acting on a flattened position register.
DenseOperator axis_operator(const LcuDecomposition& ring_op, std::int64_t side, int mu) {
  const auto s = static_cast<std::size_t>(side);
  const std::size_t dims[] = {s, s, s};
  return embed(reconstruct(ring_op), dims, static_cast<std::size_t>(mu - 1));
}

double grid_distance(const Site& a, const Site& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    const double diff = static_cast<double>(a[i] - b[i]);
    s += diff * diff;
  }
  return std::sqrt(s);
}

double inverse_distance(const Site& a, const Site& b) {
  const double r = grid_distance(a, b);
  return r == 0 ? 0.0 : 1.0 / r;
}

// Terms of the fragment restricted to the layout; each inner vector is one term of the
// defining sum. Coulomb fragments are diagonal and handled separately.
std::vector<FragmentTerm> enumerate_terms(FragmentId id, const SimulationParams& p,
                                                   const Support& s, const Layout& lay) {
  const Lattice lat(p);
  const auto lambda = static_cast<std::size_t>(p.lambda_int);
  std::vector<FragmentTerm> terms;
  auto slot_of = [&](const LinkIndex& l) -> std::optional<std::size_t> {
    auto it = lay.link_slot.find(lat.link_id(l));
    if (it == lay.link_slot.end()) return std::nullopt;
    return it->second;
  };

  switch (id) {
    case FragmentId::H1pi:
    case FragmentId::H2pi:
    case FragmentId::H3pi: {
      if (!s.positions && id != FragmentId::H3pi) break;
      const DenseOperator a_op = op_A(lambda, p.Delta);
      for (int j = 0; j < s.particles; ++j) {
        for (const auto& l : s.links) {
          const std::size_t ls = *slot_of(l);
          Monomial m;
          if (id == FragmentId::H1pi) {
            m.coeff = -0.5;
            m.factors.push_back({lay.pos_slot(j), axis_operator(lcu_laplacian(p.a, p.h, lat.side()), lat.side(), l.mu)});
          } else if (id == FragmentId::H2pi) {
            m.coeff = 1.0 / p.c;
            m.factors.push_back({lay.pos_slot(j), cplx(0, 1) * axis_operator(lcu_gradient(p.a, p.h, lat.side()), lat.side(), l.mu)});
            m.factors.push_back({ls, a_op});
          } else {
            m.coeff = 1.0 / (2 * p.c * p.c);
            m.factors.push_back({ls, a_op * a_op});
          }
          terms.push_back({{std::move(m)}, {}});
        }
      }
      break;
    }
    case FragmentId::Hf1: {
      const DenseOperator e2 = op_E2(lambda);
      for (const auto& l : s.links) terms.push_back({{Monomial{0.5, {{*slot_of(l), e2}}}}, {}});
      break;
    }
    case FragmentId::Hf2: {
      const DenseOperator u = op_U(lambda);
      const DenseOperator ud = u.adjoint();
      for (const auto& pl : lat.plaquettes()) {
        std::array<std::size_t, 4> slots{};
        bool kept = true;
        for (int k = 0; k < 4; ++k) {
          auto sl = slot_of(pl.links[k]);
          if (!sl) {
            kept = false;
            break;
          }
          slots[k] = *sl;
        }
        if (!kept) continue;
        Monomial fwd{-1.0, {{slots[0], u}, {slots[1], u}, {slots[2], ud}, {slots[3], ud}}};
        // Hermitian conjugate: (U1 U2 U3^dag U4^dag)^dag = U4 U3 U2^dag U1^dag.
        Monomial back{-1.0, {{slots[3], u}, {slots[2], u}, {slots[1], ud}, {slots[0], ud}}};
        terms.push_back({{std::move(fwd), std::move(back)}, {}});
      }
      break;
    }
    case FragmentId::Hs: {
      if (!s.spin) break;
      const DenseOperator a_op = op_A(lambda, p.Delta);
      const auto stencil = stencil_first(p.a);
      for (int j = 0; j < s.particles; ++j) {
        for (std::int64_t flat = 0; flat < lat.sites(); ++flat) {
          const Site q = lat.unflatten(flat);
          for (int mu = 1; mu <= 3; ++mu) {
            const int nu = mu % 3 + 1;
            const int xi = nu % 3 + 1;
            // Curl component: forward difference of A_xi along nu minus A_nu along xi.
            std::map<std::size_t, double> weights;
            bool kept = true;
            for (int k = -p.a; k <= p.a && kept; ++k) {
              if (k == 0) continue;
              const double w = stencil[k + p.a] / p.h;
              auto s1 = slot_of({lat.step(q, nu, k), xi});
              auto s2 = slot_of({lat.step(q, xi, k), nu});
              if (!s1 || !s2) {
                kept = false;
                break;
              }
              weights[*s1] += w;
              weights[*s2] -= w;
            }
            if (!kept) continue;
            FragmentTerm term;
            for (const auto& [slot, w] : weights) {
              if (w == 0) continue;
              term.monomials.push_back(Monomial{-w / p.c, {{lay.spin_slot(j), pauli(mu)}, {slot, a_op}}});
            }
            terms.push_back(std::move(term));
          }
        }
      }
      break;
    }
    case FragmentId::Hvee:
      if (!s.positions) break;
      for (int k = 0; k < s.particles; ++k)
        for (int j = k + 1; j < s.particles; ++j) terms.push_back({{}, {lay.pos_slot(k), lay.pos_slot(j)}});
      break;
    case FragmentId::Hvne:
      if (!s.positions) break;
      for (int j = 0; j < s.particles; ++j) terms.push_back({{}, {lay.pos_slot(j)}});
      break;
  }
  return terms;
}

DenseOperator coulomb_operator(FragmentId id, const SimulationParams& p, const Layout& lay,
                               int particles) {
  const Lattice lat(p);
  const std::size_t dim = guarded_product(lay.dims);
  std::vector<Site> nuclei;
  for (std::size_t k = 0; k < p.Z.size(); ++k) {
    nuclei.push_back(lat.unflatten(static_cast<std::int64_t>(k) % lat.sites()));
  }
  std::vector<double> diag(dim, 0.0);
  std::vector<std::size_t> digits(lay.dims.size());
  std::vector<Site> pos(static_cast<std::size_t>(particles));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t rem = idx;
    for (std::size_t r = lay.dims.size(); r-- > 0;) {
      digits[r] = rem % lay.dims[r];
      rem /= lay.dims[r];
    }
    for (int j = 0; j < particles; ++j) {
      pos[j] = lat.unflatten(static_cast<std::int64_t>(digits[lay.pos_slot(j)]));
    }
    double v = 0;
    if (id == FragmentId::Hvee) {
      for (int k = 0; k < particles; ++k)
        for (int j = k + 1; j < particles; ++j) v += inverse_distance(pos[k], pos[j]);
    } else {
      for (int j = 0; j < particles; ++j)
        for (std::size_t k = 0; k < nuclei.size(); ++k) v -= p.Z[k] * inverse_distance(pos[j], nuclei[k]);
    }
    diag[idx] = v / p.Delta;
  }
  return diagonal(std::span<const double>(diag));
}

}  // namespace

std::string fragment_name(FragmentId id) {
  switch (id) {
    case FragmentId::H1pi: return "H1pi";
    case FragmentId::H2pi: return "H2pi";
    case FragmentId::H3pi: return "H3pi";
    case FragmentId::Hf1: return "Hf1";
    case FragmentId::Hf2: return "Hf2";
    case FragmentId::Hs: return "Hs";
    case FragmentId::Hvee: return "Hvee";
    case FragmentId::Hvne: return "Hvne";
  }
  return "?";
}

FragmentId fragment_from_name(const std::string& name) {
  for (auto id : kAllFragments) {
    if (fragment_name(id) == name) return id;
  }
  throw InvalidArgument("unknown fragment: " + name);
}

DenseOperator op_E2(std::size_t lambda) {
  if (lambda < 1) throw InvalidArgument("Lambda must be >= 1");
  std::vector<double> v(2 * lambda);
  for (std::size_t b = 0; b < v.size(); ++b) {
    const double e = static_cast<double>(b) - static_cast<double>(lambda);
    v[b] = e * e;
  }
  return diagonal(std::span<const double>(v));
}

DenseOperator op_U(std::size_t lambda) {
  if (lambda < 1) throw InvalidArgument("Lambda must be >= 1");
  return shift(2 * lambda, 1);
}

DenseOperator op_A(std::size_t lambda, double delta) {
  if (lambda < 1) throw InvalidArgument("Lambda must be >= 1");
  if (!(delta > 0)) throw InvalidArgument("Delta must be positive");
  const std::size_t d = 2 * lambda;
  std::vector<cplx> log_c(d);
  for (std::size_t k = 0; k < d; ++k) log_c[k] = cplx(0, 2 * pi * static_cast<double>(k) / d);
  const DenseOperator f = fourier(d);
  const DenseOperator a = f.adjoint() * diagonal(std::span<const cplx>(log_c)) * f / cplx(0, delta);
  return (a + a.adjoint()) / 2.0;
}

DenseOperator op_W2_pair(std::size_t lambda) {
  const DenseOperator u = op_U(lambda);
  const DenseOperator ud = u.adjoint();
  const std::size_t d = 2 * lambda;
  if (d * d * d * d > kDenseGuard) throw GuardExceeded("plaquette register exceeds the dense guard");
  const DenseOperator fwd = kron(kron(u, u), kron(ud, ud));
  return fwd + fwd.adjoint();
}

std::vector<std::size_t> support_dims(const SimulationParams& p, const Support& s) {
  return make_layout(p, s).dims;
}

std::size_t support_dim(const SimulationParams& p, const Support& s) {
  return guarded_product(make_layout(p, s).dims);
}

DenseOperator op_fragment(FragmentId id, const SimulationParams& p, const Support& s) {
  const Layout lay = make_layout(p, s);
  const std::size_t dim = guarded_product(lay.dims);
  if (id == FragmentId::Hvee || id == FragmentId::Hvne) {
    return coulomb_operator(id, p, lay, s.positions ? s.particles : 0);
  }
  DenseOperator out = zeros(dim);
  for (const auto& term : enumerate_terms(id, p, s, lay)) {
    for (const auto& m : term.monomials) out += realize(m, lay.dims);
  }
  return out;
}

std::vector<FragmentTerm> fragment_terms(FragmentId id, const SimulationParams& p, const Support& s) {
  const Layout lay = make_layout(p, s);
  return enumerate_terms(id, p, s, lay);
}

std::size_t retained_terms(FragmentId id, const SimulationParams& p, const Support& s) {
  return fragment_terms(id, p, s).size();
}

Support full_support(const SimulationParams& p) {
  require_lattice(p);
  Support s;
  s.particles = static_cast<int>(p.eta);
  s.spin = true;
  const Lattice lat(p);
  for (std::int64_t i = 0; i < lat.sites(); ++i)
    for (int mu = 1; mu <= 3; ++mu) s.links.push_back({lat.unflatten(i), mu});
  return s;
}

bool terms_commute(const FragmentTerm& a, const FragmentTerm& b) {
  const bool a_diag = a.monomials.empty();
  const bool b_diag = b.monomials.empty();
  if (a_diag && b_diag) return true;
  auto collapse = [](const OperatorMonomial& m) {
    std::map<std::size_t, DenseOperator> per_slot;
    for (const auto& f : m.factors) {
      auto it = per_slot.find(f.slot);
      if (it == per_slot.end()) {
        per_slot.emplace(f.slot, f.op);
      } else {
        it->second = it->second * f.op;
      }
    }
    return per_slot;
  };
  auto is_diag = [](const DenseOperator& m) {
    return max_abs_diff(m, DenseOperator(m.diagonal().asDiagonal())) <= kMatTol;
  };
  if (a_diag || b_diag) {
    const FragmentTerm& d = a_diag ? a : b;
    const FragmentTerm& o = a_diag ? b : a;
    for (const auto& m : o.monomials) {
      const auto slots = collapse(m);
      for (auto s : d.diagonal_slots) {
        auto it = slots.find(s);
        if (it != slots.end() && !is_diag(it->second)) return false;
      }
    }
    return true;
  }
  for (const auto& ma : a.monomials) {
    const auto sa = collapse(ma);
    for (const auto& mb : b.monomials) {
      for (const auto& [slot, opb] : collapse(mb)) {
        auto it = sa.find(slot);
        if (it == sa.end()) continue;
        if (max_abs_diff(it->second * opb, opb * it->second) > kMatTol) return false;
      }
    }
  }
  return true;
}

double total_terms(FragmentId id, const SimulationParams& p) {
  switch (id) {
    case FragmentId::H1pi:
    case FragmentId::H2pi:
    case FragmentId::H3pi:
    case FragmentId::Hs: return 3 * p.eta * p.N;
    case FragmentId::Hf1:
    case FragmentId::Hf2: return 3 * p.N;
    case FragmentId::Hvee: return p.eta * (p.eta - 1) / 2;
    case FragmentId::Hvne: return p.eta;
  }
  return 0;
}

double fragment_l1_bound(FragmentId id, const SimulationParams& p) {
  const double lg = std::log(2.0 * p.a * p.a);
  const double d2 = p.Delta * p.Delta;
  switch (id) {
    case FragmentId::H1pi: return 8 * pi * pi * p.eta * p.N / (p.h * p.h);
    case FragmentId::H2pi:
    case FragmentId::Hs: return 12 * pi * p.eta * p.N * lg / (p.c * p.h * p.Delta);
    case FragmentId::H3pi: return 12 * pi * pi * p.eta * p.N / (p.c * p.c * d2);
    case FragmentId::Hvee: return p.eta * (p.eta - 1) / (2 * d2);
    case FragmentId::Hvne: return p.eta * p.Z_sum / d2;
    case FragmentId::Hf1: return 1.5 * p.N * p.Lambda * p.Lambda;
    case FragmentId::Hf2: return 6 * p.N;
  }
  return 0;
}

double support_l1_bound(FragmentId id, const SimulationParams& p, const Support& s) {
  const double total = total_terms(id, p);
  if (total == 0) return 0;
  return fragment_l1_bound(id, p) * static_cast<double>(retained_terms(id, p, s)) / total;
}

double coulomb_sum(double N, double delta) {
  if (!(delta > 0)) throw InvalidArgument("Delta must be positive");
  ParamsInput raw;
  raw.N = N;
  raw.L = 1;
  const Lattice lat(derive(raw));
  if (lat.sites() > 13 * 13 * 13) throw GuardExceeded("coulomb_sum limited to N <= 13^3");
  double sum = 0;
  for (std::int64_t i = 0; i < lat.sites(); ++i) {
    const Site a = lat.unflatten(i);
    for (std::int64_t j = 0; j < lat.sites(); ++j) {
      if (i != j) sum += 1.0 / grid_distance(a, lat.unflatten(j));
    }
  }
  return sum / delta;
}

}  // namespace pfqed
