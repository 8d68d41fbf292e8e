#include "pfqed/gate_cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

using std::numbers::pi;

double log2_link(const SimulationParams& p) { return std::log2(p.d); }

double loglog2_link(const SimulationParams& p) {
  const double l = log2_link(p);
  return l > 1 ? std::log2(l) : 0.0;
}

std::vector<double> resolve_split(const std::vector<double>& split) {
  if (split.empty()) return {2.0, 2.0};
  for (double r : split) {
    if (!(r >= 1)) throw InvalidArgument("split parameters r_i must be >= 1");
  }
  return split;
}

// sum_i N^{1/r_i} log2(N)/r_i
double split_sum(double N, const std::vector<double>& split) {
  double s = 0;
  for (double r : split) s += std::pow(N, 1.0 / r) * std::log2(N) / r;
  return s;
}

void check_delta(double delta, const char* name) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

QubitizedCost qubitized(double lambda, double encoding, double delta, double tau) {
  if (!(tau >= 0)) throw InvalidArgument("time slice must be nonnegative");
  QubitizedCost c;
  c.lambda = lambda;
  c.encoding = encoding;
  c.repetitions = std::max(1.0, lambda * tau + precision_factor(delta));
  c.gates = c.repetitions * c.encoding;
  return c;
}

double l1_of(const SimulationParams& p) {
  return 1 + (p.eta + p.Z_sum) / p.N + p.Delta * p.Delta * p.Lambda * p.Lambda / p.eta;
}

std::vector<std::string> assumption_warnings(const SimulationParams& p) {
  std::vector<std::string> w;
  if (p.eta > p.N) w.push_back("eta exceeds N");
  if (p.K > p.N) w.push_back("K exceeds N");
  if (1.0 / (p.Delta * p.Delta * p.c) > 1) w.push_back("1/(Delta^2 c) exceeds 1");
  if (p.h > p.K_h * p.Delta) w.push_back("h exceeds K_h Delta");
  return w;
}

void check_time(const SimulationParams& p) {
  if (!(p.t > 0)) throw InvalidArgument("cost models need t > 0");
  check_delta(p.eps, "eps");
}

}  // namespace

double precision_factor(double delta) {
  check_delta(delta, "delta");
  const double l = std::log2(1.0 / delta);
  if (l <= 1) return 1.0;
  return l / std::max(1.0, std::log2(l));
}

GateCount cost_Hf2_encoding(const SimulationParams& p, const std::vector<double>& split) {
  const auto r = resolve_split(split);
  const double N = p.N, M = static_cast<double>(r.size());
  const double lgd = log2_link(p), llgd = loglog2_link(p);
  const double s = split_sum(N, r);
  GateCount g;
  g.rotations = 6 * N;
  g.t_gates = 48 * N * lgd * llgd + 7.2 * N * llgd * llgd + 4 * s + 4 * N * M + 48 * N;
  g.cnot = 4 * s + 4 * N * M + 51 * N;
  g.hadamard = 6 * N * lgd + std::log2(N) + 5;
  g.ancillae = 3 * N;  // one selection flag per link subspace
  return g;
}

double cost_Hf2_encoding_total(const SimulationParams& p, const std::vector<double>& split) {
  const auto r = resolve_split(split);
  const double N = p.N, M = static_cast<double>(r.size());
  return 6 * N * log2_link(p) + std::log2(N) + 5 + 105 * N + 8 * split_sum(N, r) + 8 * N * M;
}

GateCount cost_Hf1_trotter(const SimulationParams& p) {
  const double zeta = 1 + std::log2(p.Lambda);
  GateCount g;
  g.rotations = 3 * p.N * zeta * (zeta + 1) / 2;
  g.cnot = 3 * p.N * (zeta + 2) * (zeta - 1) / 2;
  return g;
}

nlohmann::json to_json(const QubitizedCost& c) {
  return {{"lambda", c.lambda},
          {"encoding", c.encoding},
          {"repetitions", c.repetitions},
          {"gates", c.gates}};
}

QubitizedCost cost_H12(const SimulationParams& p, double delta, double tau) {
  return qubitized(6 * p.N, cost_Hf2_encoding_total(p), delta, tau);
}

QubitizedCost cost_H31(const SimulationParams& p, double delta, double tau) {
  const double lg = std::log(2.0 * p.a * p.a);
  const double lambda = 12 * pi * p.eta * p.N * lg / (p.c * p.h * p.Delta) +
                        12 * pi * pi * p.eta * p.N / (p.c * p.c * p.Delta * p.Delta);
  const double lgd = log2_link(p);
  return qubitized(lambda, p.eta + p.N * (p.a + lgd) * lgd, delta, tau);
}

QubitizedCost cost_H32(const SimulationParams& p, double delta, double tau, double delta_prime) {
  check_delta(delta_prime, "delta'");
  const double rate = p.eta * p.N / (p.Delta * p.Delta) * (1 + p.eta_s / p.N);
  const double lN = std::log2(p.N);
  const double encoding = p.eta * p.a * lN + p.N * log2_link(p) +
                          lN * std::log2(p.N / delta_prime) + p.K * std::log2(1.0 / delta_prime);
  return qubitized(rate, encoding, delta, tau);
}

nlohmann::json to_json(const CostModel& c) {
  nlohmann::json j = {{"algorithm", c.algorithm}, {"total", c.total}, {"warnings", c.warnings}};
  if (c.algorithm == "dc") j["p1"] = c.p1;
  return j;
}

CostModel dc_total(const SimulationParams& p, int p1) {
  if (p1 < 1) throw InvalidArgument("p1 must be >= 1");
  check_time(p);
  const double D2 = p.Delta * p.Delta, inv = 1.0 / p1;
  const double eta = p.eta, N = p.N, t = p.t, eps = p.eps;
  const double L1 = l1_of(p);
  const double Ns = eta + p.Z_sum + N;
  const double dp = std::pow(eps / t, 1 + inv) * D2 / (eta * N) * std::pow(L1, inv - 1);
  if (!(dp > 0 && dp < 1)) throw InvalidArgument("derived synthesis error outside (0, 1)");
  const double Nsp = Ns + N * precision_factor(dp) * std::pow(t * eta / (eps * D2), inv) *
                              std::pow(L1, 1 - inv);
  const double lN = std::log2(N), lL = log2_link(p);
  CostModel m;
  m.algorithm = "dc";
  m.p1 = p1;
  m.total = eta * eta * Nsp * t * lN / D2 +
            eta * N * Nsp * t * lL * lL / D2 * std::pow(1 + D2 * p.Lambda / eta, inv) +
            eta * Nsp * t / D2 * lN * std::log2(N / dp) + eta * Nsp * p.K * t / D2 * std::log2(1 / dp);
  m.warnings = assumption_warnings(p);
  return m;
}

CostModel qub_total(const SimulationParams& p) {
  check_time(p);
  const double D2 = p.Delta * p.Delta;
  const double L1 = l1_of(p);
  const double dp = p.eps * D2 / (p.eta * p.N * p.t * L1);
  if (!(dp > 0 && dp < 1)) throw InvalidArgument("derived synthesis error outside (0, 1)");
  const double lN = std::log2(p.N), lL = log2_link(p);
  CostModel m;
  m.algorithm = "qub";
  m.total = (p.eta * p.N * p.t / D2 * L1 + precision_factor(p.eps)) *
            ((p.eta + lN) * lN + (p.K + lN) * std::log2(1 / dp) + p.N * lL * lL);
  m.warnings = assumption_warnings(p);
  return m;
}

CostModel evaluate_model(const std::string& model, const SimulationParams& p) {
  if (model == "qub") return qub_total(p);
  if (model.size() > 2 && model.starts_with("dc")) {
    int order = 0;
    try {
      std::size_t used = 0;
      order = std::stoi(model.substr(2), &used);
      if (used != model.size() - 2) order = 0;
    } catch (const std::exception&) {
      order = 0;
    }
    if (order >= 1) return dc_total(p, order);
  }
  throw InvalidArgument("unknown cost model: " + model);
}

SweepVariable sweep_variable_from_name(const std::string& name) {
  if (name == "N" || name == "n") return SweepVariable::N;
  if (name == "Lambda" || name == "lambda") return SweepVariable::Lambda;
  throw InvalidArgument("unknown sweep variable: " + name);
}

std::string sweep_variable_name(SweepVariable v) { return v == SweepVariable::N ? "N" : "Lambda"; }

std::vector<RatioRow> cost_ratio_sweep(SweepVariable var, std::vector<double> xs,
                                       const ParamsInput& reference,
                                       const std::vector<std::string>& models) {
  if (xs.empty()) throw InvalidArgument("empty sweep range");
  if (models.empty()) throw InvalidArgument("no cost models requested");
  std::sort(xs.begin(), xs.end());
  const auto ref = derive_relaxed(reference);
  std::vector<double> base;
  for (const auto& m : models) base.push_back(evaluate_model(m, ref).total);
  std::vector<RatioRow> rows;
  for (double x : xs) {
    ParamsInput raw = reference;
    (var == SweepVariable::N ? raw.N : raw.Lambda) = x;
    const auto p = derive_relaxed(raw);
    RatioRow row{x, {}};
    for (std::size_t i = 0; i < models.size(); ++i)
      row.ratios.push_back(evaluate_model(models[i], p).total / base[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0 && hi >= lo) || n < 1) throw InvalidArgument("invalid log grid");
  if (n == 1) return {lo};
  std::vector<double> out;
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace pfqed
