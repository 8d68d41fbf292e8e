#include "pfqed/commutators.hpp"

#include <cmath>
#include <numbers>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

using std::numbers::pi;

int rank(CommGroup g) { return static_cast<int>(g); }

std::vector<FragmentTerm> group_terms(CommGroup g, const SimulationParams& p, const Support& s) {
  std::vector<FragmentTerm> out;
  for (auto id : group_fragments(g)) {
    auto t = fragment_terms(id, p, s);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  return out;
}

}  // namespace

std::string group_name(CommGroup g) {
  switch (g) {
    case CommGroup::Hpi: return "Hpi";
    case CommGroup::Hvee: return "Hvee";
    case CommGroup::Hvne: return "Hvne";
    case CommGroup::Hf1: return "Hf1";
    case CommGroup::Hf2: return "Hf2";
    case CommGroup::Hs: return "Hs";
  }
  return "?";
}

CommGroup group_from_name(const std::string& name) {
  for (auto g : kAllGroups) {
    if (group_name(g) == name) return g;
  }
  throw InvalidArgument("unknown commutator group: " + name);
}

std::vector<FragmentId> group_fragments(CommGroup g) {
  switch (g) {
    case CommGroup::Hpi: return {FragmentId::H1pi, FragmentId::H2pi, FragmentId::H3pi};
    case CommGroup::Hvee: return {FragmentId::Hvee};
    case CommGroup::Hvne: return {FragmentId::Hvne};
    case CommGroup::Hf1: return {FragmentId::Hf1};
    case CommGroup::Hf2: return {FragmentId::Hf2};
    case CommGroup::Hs: return {FragmentId::Hs};
  }
  return {};
}

bool printed_zero(CommGroup a, CommGroup b) {
  if (a == b) return true;
  if (rank(a) > rank(b)) std::swap(a, b);
  // Only pairs with Hpi, plus (Hf1, Hf2), (Hf1, Hs) and (Hf2, Hs), carry a formula.
  if (a == CommGroup::Hpi) return false;
  if (a == CommGroup::Hf1 && (b == CommGroup::Hf2 || b == CommGroup::Hs)) return false;
  if (a == CommGroup::Hf2 && b == CommGroup::Hs) return false;
  return true;
}

double bound_pair(CommGroup a, CommGroup b, const SimulationParams& p) {
  if (printed_zero(a, b)) return 0;
  if (rank(a) > rank(b)) std::swap(a, b);
  const double lg = std::log(2.0 * p.a * p.a);
  const double eta = p.eta, N = p.N, c = p.c, h = p.h, D = p.Delta, L = p.Lambda;
  if (a == CommGroup::Hpi) {
    switch (b) {
      case CommGroup::Hvee:
        return 4 * pi * eta * (eta - 1) * std::pow(N, 8.0 / 3.0) / (h * h * D * D) *
               (pi + 6 * h * lg / (c * D));
      case CommGroup::Hvne:
        return 4 * pi * eta * std::pow(N, 5.0 / 3.0) * p.K * p.Z_max / (h * h * D * D) *
               (pi + 6 * h * lg / (c * D));
      case CommGroup::Hf1:
        return 6 * pi * eta * N * L * L / (c * D) * (lg / h + 2 * pi / (c * D));
      case CommGroup::Hf2:
        return 198 * pi * eta * N / (c * D) * (lg / h + pi / (c * D));
      case CommGroup::Hs:
        return 96 * pi * pi * eta * eta * N * lg / (h * c * c * D * D) * (lg / h + pi / (c * D));
      default: break;
    }
  }
  if (a == CommGroup::Hf1 && b == CommGroup::Hf2) return 12 * N * L;
  if (a == CommGroup::Hf1 && b == CommGroup::Hs) return 24 * pi * eta * N * L * L * lg / (c * h * D);
  if (a == CommGroup::Hf2 && b == CommGroup::Hs) return 288 * pi * eta * N * lg / (c * h * D);
  return 0;
}

double nested_bound(const std::vector<NestedGroup>& groups, int p, int p_prime) {
  if (p_prime < 1 || p_prime > p) throw InvalidArgument("need 1 <= p' <= p");
  const double pref = std::ldexp(1.0, p - (p_prime + 1));
  double total = 0;
  for (const auto& g : groups) {
    if (g.inner < 0) throw InvalidArgument("inner bounds must be nonnegative");
    double s = 0;
    for (double n : g.norms) {
      if (n < 0) throw InvalidArgument("norms must be nonnegative");
      s += n;
    }
    total += pref * g.inner * std::pow(s, p - p_prime);
  }
  return total;
}

DenseOperator op_group(CommGroup g, const SimulationParams& p, const Support& s) {
  DenseOperator out;
  for (auto id : group_fragments(g)) {
    DenseOperator h = op_fragment(id, p, s);
    if (out.size() == 0) {
      out = std::move(h);
    } else {
      out += h;
    }
  }
  return out;
}

double exact_pair_norm(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s) {
  return spectral_norm(commutator(op_group(a, p, s), op_group(b, p, s)));
}

bool structurally_commute(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s) {
  return interacting_pairs(a, b, p, s) == 0;
}

std::size_t interacting_pairs(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s) {
  const auto ta = group_terms(a, p, s);
  const auto tb = group_terms(b, p, s);
  std::size_t count = 0;
  for (const auto& x : ta)
    for (const auto& y : tb) count += terms_commute(x, y) ? 0 : 1;
  return count;
}

double support_bound(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s) {
  const double bound = bound_pair(a, b, p);
  if (bound == 0) return 0;
  const auto global = interacting_pairs(a, b, p, full_support(p));
  if (global == 0) return 0;
  return bound * static_cast<double>(interacting_pairs(a, b, p, s)) / static_cast<double>(global);
}

nlohmann::json commutator_table(const SimulationParams& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto a : kAllGroups) {
    for (auto b : kAllGroups) {
      if (rank(b) > rank(a)) continue;
      rows.push_back({{"row", group_name(a)},
                      {"col", group_name(b)},
                      {"printed_zero", printed_zero(a, b)},
                      {"bound", bound_pair(a, b, p)}});
    }
  }
  return rows;
}

}  // namespace pfqed
