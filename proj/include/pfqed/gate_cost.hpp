#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pfqed/gate_count.hpp"
#include "pfqed/lattice.hpp"

namespace pfqed {

// log2(1/delta) / log2(log2(1/delta)), the qubitization precision term. Clamped to >= 1 where
// the double logarithm is below one.
double precision_factor(double delta);

// Block encoding of the plaquette group H_f2 with 6N controlled rotations. `split` lists the
// r_i of the link-index control split (group i has log2(N)/r_i qubits); empty means the
// default equal 2-split {2, 2}.
GateCount cost_Hf2_encoding(const SimulationParams& p, const std::vector<double>& split = {});
// Printed total for one encoding, Hadamards included.
double cost_Hf2_encoding_total(const SimulationParams& p, const std::vector<double>& split = {});

// One exact Trotter step of the electric group: zeta = 1 + log2(Lambda) qubits per link,
// zeta(zeta+1)/2 rotations and (zeta+2)(zeta-1)/2 CNOTs each, 3N links.
GateCount cost_Hf1_trotter(const SimulationParams& p);

// Qubitized simulation of one group: repetitions R = max(1, lambda*tau + precision_factor(delta))
// calls to an encoding of cost `encoding`.
struct QubitizedCost {
  double lambda = 0;
  double encoding = 0;
  double repetitions = 1;
  double gates = 0;
};

nlohmann::json to_json(const QubitizedCost& c);

QubitizedCost cost_H12(const SimulationParams& p, double delta, double tau);
// H31 = H_s + H_3pi. lambda = 12 pi eta N ln(2a^2)/(c h Delta) + 12 pi^2 eta N/(c^2 Delta^2);
// encoding = eta + N(a + log2 d) log2 d.
QubitizedCost cost_H31(const SimulationParams& p, double delta, double tau);
// H32 = H_V + H_1pi + H_2pi. Repetitions use eta N/Delta^2 (1 + eta_s/N) in place of lambda;
// encoding = eta a log2 N + N log2 d + log2 N log2(N/delta') + K log2(1/delta').
QubitizedCost cost_H32(const SimulationParams& p, double delta, double tau, double delta_prime);

struct CostModel {
  std::string algorithm;  // "dc" or "qub"
  int p1 = 0;             // splitting order, dc only
  double total = 0;
  std::vector<std::string> warnings;  // violated asymptotic-regime assumptions
};

nlohmann::json to_json(const CostModel& c);

// Divide-and-conquer total with unit constants.
CostModel dc_total(const SimulationParams& p, int p1);
// Qubitization of the whole Hamiltonian with delta' = eps Delta^2/(eta N t L_1).
CostModel qub_total(const SimulationParams& p);

// Model names: "qub" or "dc<p1>" (e.g. dc1, dc2).
CostModel evaluate_model(const std::string& model, const SimulationParams& p);

enum class SweepVariable { N, Lambda };
SweepVariable sweep_variable_from_name(const std::string& name);
std::string sweep_variable_name(SweepVariable v);

struct RatioRow {
  double x = 0;
  std::vector<double> ratios;  // one per model, same order as requested
};

// total(params(x)) / total(reference) per model. Rows are sorted by x.
std::vector<RatioRow> cost_ratio_sweep(SweepVariable var, std::vector<double> xs,
                                       const ParamsInput& reference,
                                       const std::vector<std::string>& models);

// n points from lo to hi, evenly spaced in log10.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace pfqed
