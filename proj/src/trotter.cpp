#include "pfqed/trotter.hpp"

#include <algorithm>
#include <cmath>

#include "pfqed/errors.hpp"
#include "pfqed/gate_cost.hpp"

namespace pfqed {

namespace {

void check_tree(const BudgetTree& tree) {
  if (tree.levels.empty()) throw InvalidArgument("budget tree has no levels");
  for (std::size_t k = 0; k < tree.levels.size(); ++k) {
    const auto& lv = tree.levels[k];
    if (!(lv.r >= 1)) throw InvalidArgument("segment counts must be >= 1");
    if (!(lv.exponentials >= 0) || !(lv.eps >= 0)) throw InvalidArgument("negative tree entry");
    if (lv.leaves.empty()) throw InvalidArgument("every level needs at least one leaf");
    if (k + 1 == tree.levels.size() && lv.leaves.size() < 2)
      throw InvalidArgument("the last level must list both halves of its split");
    for (const auto& leaf : lv.leaves) {
      if (!(leaf.delta >= 0) || !(leaf.gates >= 0)) throw InvalidArgument("negative leaf entry");
    }
  }
}

void check_order(int p1) {
  if (p1 < 1) throw InvalidArgument("splitting order must be >= 1");
}

}  // namespace

double total_error(const BudgetTree& tree) {
  check_tree(tree);
  double inner = 0;
  for (auto it = tree.levels.rbegin(); it != tree.levels.rend(); ++it) {
    double deltas = 0;
    for (const auto& leaf : it->leaves) deltas += leaf.delta;
    inner = it->r * (it->eps + it->exponentials * (deltas + inner));
  }
  return inner;
}

double total_gates(const BudgetTree& tree) {
  check_tree(tree);
  double inner = 0;
  for (auto it = tree.levels.rbegin(); it != tree.levels.rend(); ++it) {
    double gates = 0;
    for (const auto& leaf : it->leaves) gates += leaf.gates;
    inner = it->r * it->exponentials * (gates + inner);
  }
  return inner;
}

double exponential_count(int order) {
  check_order(order);
  return 2 * std::pow(5.0, order - 1);
}

double l1_factor(const SimulationParams& p) {
  return 1 + p.eta_s / p.N + p.Delta * p.Delta * p.Lambda * p.Lambda / p.eta;
}

SplitErrors split_errors(const SimulationParams& p, int p1, double r1, double r2, double r3) {
  check_order(p1);
  if (!(r1 >= 1 && r2 >= 1 && r3 >= 1)) throw InvalidArgument("segment counts must be >= 1");
  const double D2 = p.Delta * p.Delta;
  const double x = std::pow(p.eta * p.N / D2, p1);
  const double l1 = std::pow(l1_factor(p), p1 - 1);
  const double b = 1 + D2 * p.Lambda / p.eta;
  const double ls = std::pow(1 + p.eta_s / p.N, p1 - 1);
  SplitErrors e;
  e.e1 = x * b * l1 * std::pow(p.t / r1, p1 + 1);
  e.e2 = p.Lambda * p.Lambda * x * l1 * std::pow(p.t / (r1 * r2), p1 + 1);
  e.e3 = p.eta / D2 * x * ls * std::pow(p.t / (r1 * r2 * r3), p1 + 1);
  return e;
}

TrotterChoice choose_parameters(const SimulationParams& p, int p1) {
  check_order(p1);
  if (!(p.eps > 0)) throw InvalidArgument("eps must be positive");
  if (!(p.t >= 0)) throw InvalidArgument("t must be nonnegative");
  const double D2 = p.Delta * p.Delta, inv = 1.0 / p1;
  const double b = 1 + D2 * p.Lambda / p.eta;
  TrotterChoice c;
  c.r1_real = std::pow(p.t / p.eps, inv) * p.t * p.eta * p.N / D2 *
              std::pow(l1_factor(p), 1 - inv) * std::pow(b, inv);
  c.r2_real = std::pow(p.Lambda, 2 * inv) * std::pow(b, -inv);
  c.r3_real = std::pow(p.eta / (D2 * p.Lambda * p.Lambda), inv);
  c.r1 = std::max(1.0, std::ceil(c.r1_real));
  c.r2 = std::max(1.0, std::ceil(c.r2_real));
  c.r3 = std::max(1.0, std::ceil(c.r3_real));
  c.delta1 = p.eps / c.r1;
  c.delta2 = p.eps / (c.r1 * c.r2);
  c.delta31 = c.delta32 = p.eps / (c.r1 * c.r2 * c.r3);
  return c;
}

BudgetTree default_tree(const SimulationParams& p, int p1) {
  const auto c = choose_parameters(p, p1);
  const auto e = split_errors(p, p1, c.r1, c.r2, c.r3);
  const double n = exponential_count(p1);
  const double tau1 = p.t / c.r1, tau2 = tau1 / c.r2, tau3 = tau2 / c.r3;

  BudgetTree tree;
  tree.t = p.t;
  tree.levels.push_back({"H11+H12", p1, c.r1, n, e.e1,
                         {{"H12", tau1, c.delta1, cost_H12(p, c.delta1, tau1).gates}}});
  tree.levels.push_back({"H21+H22", p1, c.r2, n, e.e2,
                         {{"H21", tau2, c.delta2, cost_Hf1_trotter(p).total()}}});
  tree.levels.push_back({"H31+H32", p1, c.r3, n, e.e3,
                         {{"H31", tau3, c.delta31, cost_H31(p, c.delta31, tau3).gates},
                          {"H32", tau3, c.delta32, cost_H32(p, c.delta32, tau3, c.delta1).gates}}});
  return tree;
}

nlohmann::json to_json(const BudgetTree& tree) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : tree.levels) {
    nlohmann::json leaves = nlohmann::json::array();
    for (const auto& leaf : lv.leaves) {
      leaves.push_back({{"group", leaf.group},
                        {"tau", leaf.tau},
                        {"delta", leaf.delta},
                        {"gates", leaf.gates}});
    }
    levels.push_back({{"group", lv.group},
                      {"order", lv.order},
                      {"r", lv.r},
                      {"exponentials", lv.exponentials},
                      {"eps", lv.eps},
                      {"leaves", leaves}});
  }
  return {{"root", tree.root}, {"t", tree.t}, {"levels", levels}};
}

}  // namespace pfqed
