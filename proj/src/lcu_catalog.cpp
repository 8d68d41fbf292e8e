#include "pfqed/lcu_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfqed/errors.hpp"
#include "pfqed/operators.hpp"

namespace pfqed {

namespace {

using std::numbers::pi;

std::size_t link_dim(const GeneratorSpec& g) { return 2 * g.lambda; }

std::int64_t ring_of(const GeneratorSpec& g) {
  return g.ring > 0 ? g.ring : static_cast<std::int64_t>(link_dim(g));
}

std::vector<std::int64_t> as_integers(const std::vector<double>& v) {
  std::vector<std::int64_t> out;
  for (double x : v) {
    if (x != std::round(x)) throw InvalidArgument("integer generator needs integer values");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

void need_values(const GeneratorSpec& g) {
  if (g.values.empty()) throw InvalidArgument(g.op + " generator needs --values");
}

DenseOperator circulant(const std::vector<double>& coeffs, double scale, std::int64_t ring) {
  const int a = static_cast<int>(coeffs.size() / 2);
  DenseOperator m = zeros(static_cast<std::size_t>(ring));
  for (std::int64_t x = 0; x < ring; ++x) {
    for (int k = -a; k <= a; ++k) {
      const std::int64_t y = ((x + k) % ring + ring) % ring;
      m(x, y) += scale * coeffs[static_cast<std::size_t>(k + a)];
    }
  }
  return m;
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {"signature", "integer", "A",    "A2", "A2bits",
                                                 "E2",        "U",       "grad", "lap"};
  return names;
}

LcuDecomposition build_generator(const GeneratorSpec& g) {
  if (g.op == "signature") {
    need_values(g);
    return decompose_diagonal_real(g.values);
  }
  if (g.op == "integer") {
    need_values(g);
    const auto v = as_integers(g.values);
    return decompose_diagonal_integer(v);
  }
  if (g.op == "A") return lcu_A(link_dim(g), g.delta);
  if (g.op == "A2") return lcu_A_squared(link_dim(g), g.delta);
  if (g.op == "A2bits") return lcu_A_squared_bitplanes(link_dim(g), g.delta);
  if (g.op == "E2") return lcu_E_squared(g.lambda);
  if (g.op == "U") return lcu_U(link_dim(g));
  if (g.op == "grad") return lcu_gradient(g.a, g.h, ring_of(g));
  if (g.op == "lap") return lcu_laplacian(g.a, g.h, ring_of(g));
  throw InvalidArgument("unknown generator: " + g.op);
}

DenseOperator direct_operator(const GeneratorSpec& g) {
  if (g.op == "signature" || g.op == "integer") {
    need_values(g);
    return diagonal(std::span<const double>(g.values));
  }
  if (g.op == "A") return op_A(g.lambda, g.delta);
  if (g.op == "A2" || g.op == "A2bits") {
    const DenseOperator a = op_A(g.lambda, g.delta);
    return a * a;
  }
  if (g.op == "E2") return op_E2(g.lambda);
  if (g.op == "U") return op_U(g.lambda);
  if (g.op == "grad") return circulant(stencil_first(g.a), 1.0 / g.h, ring_of(g));
  if (g.op == "lap") return circulant(stencil_second(g.a), 1.0 / (g.h * g.h), ring_of(g));
  throw InvalidArgument("unknown generator: " + g.op);
}

TableRow table_row(const GeneratorSpec& g) {
  const double d = static_cast<double>(link_dim(g));
  const double lgd = std::ceil(std::log2(d));
  const double lgl = std::log2(static_cast<double>(g.lambda));
  TableRow row;
  if (g.op == "signature") {
    need_values(g);
    // One identity plus one signature per distinct nonzero positive and negative level;
    // l1 is the larger of the top positive and top negative magnitudes.
    std::vector<double> pos, neg;
    double p = 0, q = 0;
    for (double v : g.values) {
      if (v > 0) pos.push_back(v), p = std::max(p, v);
      if (v < 0) neg.push_back(-v), q = std::max(q, -v);
    }
    for (auto* s : {&pos, &neg}) {
      std::sort(s->begin(), s->end());
      s->erase(std::unique(s->begin(), s->end()), s->end());
    }
    row.max_terms = 1 + static_cast<double>(pos.size() + neg.size());
    row.max_l1 = std::max(p, q);
    row.note = "1 + distinct levels, max(P, Q)";
  } else if (g.op == "integer") {
    need_values(g);
    double mx = 0;
    for (double v : g.values) {
      if (v < 0) throw InvalidArgument("integer table row covers nonnegative values");
      mx = std::max(mx, v);
    }
    const double zeta = std::ceil(std::log2(mx + 1));
    row.max_terms = 1 + zeta;
    row.max_l1 = std::ldexp(1.0, static_cast<int>(zeta)) - 1;
    row.note = "1 + zeta, 2^zeta - 1";
  } else if (g.op == "A") {
    row.max_terms = lgd + 1;
    row.max_l1 = 2 * pi / g.delta;
    row.note = "ceil(log2 d) + 1, 2 pi/Delta";
  } else if (g.op == "A2") {
    row.max_terms = (lgd * lgd + lgd) / 2;
    row.max_l1 = 4 * pi * pi / (g.delta * g.delta);
    row.note = "(log2^2 d + log2 d)/2, 4 pi^2/Delta^2";
  } else if (g.op == "A2bits") {
    row.max_terms = 2 * lgd;
    row.max_l1 = 4 * pi * pi / (g.delta * g.delta);
    row.note = "2 ceil(log2 d), 4 pi^2/Delta^2";
  } else if (g.op == "E2") {
    // The printed count is the larger of the two listed forms.
    row.max_terms = std::max(2 * lgl, (lgl * lgl + lgl + 2) / 2);
    row.max_l1 = static_cast<double>(g.lambda * g.lambda);
    row.note = "max(2 log2 Lambda, (log2^2 Lambda + log2 Lambda + 2)/2), Lambda^2";
  } else if (g.op == "U") {
    row.max_terms = 1;
    row.max_l1 = 1;
    row.note = "1, 1";
  } else if (g.op == "grad") {
    row.max_terms = 2 * g.a;
    row.max_l1 = std::log(2.0 * g.a * g.a) / g.h;
    row.note = "2a, ln(2a^2)/h";
  } else if (g.op == "lap") {
    row.max_terms = 2 * g.a + 1;
    row.max_l1 = 4 * pi * pi / (3 * g.h * g.h);
    row.note = "2a + 1, 4 pi^2/(3 h^2)";
  } else {
    throw InvalidArgument("unknown generator: " + g.op);
  }
  return row;
}

}  // namespace pfqed
