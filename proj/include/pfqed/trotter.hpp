#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pfqed/lattice.hpp"

namespace pfqed {

// Group simulated directly (not split further) at some level of the tree.
struct BudgetLeaf {
  std::string group;
  double tau = 0;    // time slice
  double delta = 0;  // synthesis error
  double gates = 0;  // cost of one exponential
};

// One splitting level: the remainder is cut into r segments, each approximated by a product
// formula of order `order` with at most `exponentials` factors and splitting error `eps`.
// The leaves are the groups split off here; the last level lists both of its halves.
struct BudgetLevel {
  std::string group;
  int order = 1;
  double r = 1;
  double exponentials = 2;
  double eps = 0;
  std::vector<BudgetLeaf> leaves;
};

struct BudgetTree {
  std::string root = "H_PF";
  double t = 0;
  std::vector<BudgetLevel> levels;
};

// E_k = r_k (eps_k + N_k (sum of leaf deltas_k + E_{k+1})), E past the last level = 0.
double total_error(const BudgetTree& tree);
// G_k = r_k N_k (sum of leaf gates_k + G_{k+1}).
double total_gates(const BudgetTree& tree);

// N_i <= 2 * 5^{p_i - 1}.
double exponential_count(int order);

// eta_s = eta + Z_sum and L_1 = 1 + eta_s/N + Delta^2 Lambda^2/eta.
double l1_factor(const SimulationParams& p);

struct SplitErrors {
  double e1 = 0;
  double e2 = 0;
  double e3 = 0;
};

// The three level errors with unit constants, all orders equal to p1.
SplitErrors split_errors(const SimulationParams& p, int p1, double r1, double r2, double r3);

struct TrotterChoice {
  double r1_real = 1;
  double r2_real = 1;
  double r3_real = 1;
  double r1 = 1;
  double r2 = 1;
  double r3 = 1;
  double delta1 = 0;
  double delta2 = 0;
  double delta31 = 0;
  double delta32 = 0;
};

// Segment counts with unit constants, ceilinged to integers >= 1; synthesis errors
// delta1 = eps/r1, delta2 = eps/(r1 r2), delta3x = eps/(r1 r2 r3).
TrotterChoice choose_parameters(const SimulationParams& p, int p1);

// The default three-level grouping with every node populated from choose_parameters,
// split_errors and the per-fragment gate costs.
BudgetTree default_tree(const SimulationParams& p, int p1);

nlohmann::json to_json(const BudgetTree& tree);

}  // namespace pfqed
