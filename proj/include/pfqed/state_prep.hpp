#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "pfqed/gate_count.hpp"

namespace pfqed {

inline constexpr std::int64_t kPrepBranchGuard = std::int64_t{1} << 24;

struct PrepConfig {
  int n_p = 3;          // bits per signed coordinate, sign included
  std::int64_t M = 64;  // inequality-test resolution, a power of two
};

// n_p = 1 + log2(N^{1/3} + 1); requires N^{1/3} + 1 to be a power of two.
int prep_bits_for_grid(double N);

// Box index of v: mu with 2^{mu-2} <= max|v_i| < 2^{mu-1}. v must be nonzero.
int box_of(const std::array<std::int64_t, 3>& v);

struct PrepEntry {
  std::array<std::int64_t, 3> v{};
  int mu = 0;
  std::int64_t Q = 0;    // number of accepted m values
  double amp2 = 0;       // squared amplitude on success
  double ideal = 0;      // 3/(4(4^{n+1}-16)) / ||v||
};

struct PrepFailure {
  double mu_register = 0;  // always 0: the unary mu preparation is exact here
  double minus_zero = 0;
  double inner_box = 0;
  double inequality = 0;
  double total() const { return mu_register + minus_zero + inner_box + inequality; }
};

struct PrepResult {
  PrepConfig cfg;
  std::vector<PrepEntry> entries;       // one per nonzero grid point
  PrepFailure failure;
  double success = 0;                   // sum of amp2
  double deviation = 0;                 // sum |amp2 - ideal|
  double max_ratio_error = 0;           // max |amp2 ||v|| / ideal_const - 1|
  std::map<int, double> per_box_mass;   // success mass per mu
};

// Exact enumeration of every (mu, bit pattern) branch. The m register is counted in closed
// form with integer arithmetic: m passes iff m^2 ||v||^2 < (2^{mu-2} M)^2.
PrepResult simulate_prep(const PrepConfig& cfg);

nlohmann::json to_json(const PrepResult& r, bool include_entries = false);

struct PrepGates {
  GateCount mu_ladder;             // Step I: n_p controlled-H
  GateCount coordinate_hadamards;  // Step II: 3 n_p controlled-H
  GateCount minus_zero_flags;      // Step II: 3 compute/uncompute C^{n_p}X pairs
  GateCount box_test;              // Step III, O(n_p)
  GateCount inequality_test;       // Step IV, O(n_p^2 + n_p + n_M n_p + n_M)
  GateCount total() const;
};

PrepGates prep_gate_estimate(const PrepConfig& cfg);

nlohmann::json to_json(const PrepGates& g);

}  // namespace pfqed
