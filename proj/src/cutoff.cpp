#include "pfqed/cutoff.hpp"

#include <cmath>
#include <numbers>

#include "pfqed/errors.hpp"

namespace pfqed {

double leakage_lambda(const LeakageParams& p) {
  if (p.delta < 2) throw InvalidArgument("leakage step delta must be >= 2");
  if (!(p.Lambda0 > 0)) throw InvalidArgument("Lambda0 must be positive");
  if (!(p.chi >= 0)) throw InvalidArgument("chi must be nonnegative");
  if (!(p.r >= 0 && p.r < 1)) throw InvalidArgument("r must lie in [0, 1)");
  const double step = p.delta - 1;
  const double inner = std::pow(std::pow(p.Lambda0, 1 - p.r) + 2 * p.chi * std::abs(p.t) * (1 - p.r) * step,
                                1 / (1 - p.r));
  // Snap tiny round-off so t = 0 maps back to Lambda0 exactly.
  double grow = (inner - p.Lambda0) / step;
  const double nearest = std::round(grow);
  if (std::abs(grow - nearest) < 1e-9 * std::max(1.0, std::abs(nearest))) grow = nearest;
  return p.Lambda0 + std::ceil(grow) * step;
}

double chi_bound(const SimulationParams& p) {
  using std::numbers::pi;
  const double D2c = p.Delta * p.Delta * p.c;
  return 4 * pi * p.eta * std::log(2.0) / D2c + 4 * pi * pi / D2c + 6;
}

double heuristic_lambda(double eta, double Z_max) {
  if (!(eta >= 1)) throw InvalidArgument("eta must be >= 1");
  if (!(Z_max >= 0)) throw InvalidArgument("Z_max must be nonnegative");
  return eta * Z_max * Z_max / 2;
}

double leakage_scaling(const SimulationParams& p) {
  return p.eta * std::pow(p.N, 2.0 / 3.0) * p.t / std::pow(p.Omega, 2.0 / 3.0);
}

}  // namespace pfqed
