#pragma once

#include "pfqed/lattice.hpp"

namespace pfqed {

struct LeakageParams {
  double Lambda0 = 1;
  int delta = 2;     // integer step, must be >= 2
  double chi = 0;    // per-link norm bound
  double r = 0;      // growth exponent; 0 for lattice gauge theories
  double t = 0;
};

// Lambda0 + ceil(((Lambda0^{1-r} + 2 chi |t| (1-r)(delta-1))^{1/(1-r)} - Lambda0)/(delta-1)) (delta-1).
double leakage_lambda(const LeakageParams& p);

// 4 pi eta ln2/(Delta^2 c) + 4 pi^2/(Delta^2 c) + 6.
double chi_bound(const SimulationParams& p);

// eta Z_max^2 / 2.
double heuristic_lambda(double eta, double Z_max);

// Order-of-magnitude companion eta N^{2/3} t / Omega^{2/3}.
double leakage_scaling(const SimulationParams& p);

}  // namespace pfqed
