#pragma once

#include <cstdint>
#include <vector>

#include "pfqed/gate_count.hpp"

namespace pfqed {

// Split of the log2(M) control qubits into groups. Group i has width log2(M)/r_i.
struct Partition {
  std::int64_t M = 2;              // after padding to a power of two
  std::int64_t requested_M = 2;    // value before padding
  std::vector<int> widths;         // positive, summing to log2(M)
};

// Smallest power of two >= m, and its exponent.
std::int64_t pad_pow2(std::int64_t m);
int ceil_log2(std::int64_t m);

Partition make_partition(std::int64_t M, std::vector<int> widths);
Partition equal_partition(std::int64_t M, int n);

// T_n = sum_i 2^{w_i}(4 w_i - 4) + M(4n - 4).
std::int64_t t_count(const Partition& p);
// Same structure with -3; the merge layer is absent when n = 1.
std::int64_t cnot_count(const Partition& p);
// sum_i 2^{w_i}.
std::int64_t ancilla_count(const Partition& p);

// 4(M - M^{1/n})(log2 M - n) for n dividing log2 M.
std::int64_t t_savings_equal(std::int64_t M, int n);

struct PartitionChoice {
  Partition partition;
  std::int64_t t_count = 0;
  std::int64_t cnot = 0;
  std::int64_t ancillae = 0;
  std::int64_t savings = 0;
};

// Equal split minimizing the T count; ties go to the smaller n.
PartitionChoice optimize_partition(std::int64_t M);

struct SelectCost {
  GateCount divided;
  GateCount undivided;
  std::int64_t t_difference = 0;     // divided - undivided
  std::int64_t cnot_difference = 0;
  std::int64_t M = 0;                // number of sub-Hamiltonians (padded)
  std::int64_t M_prime = 0;          // total unitary count (padded)
};

// Divided: sum_i M_i(4(log2 M_i + 1) - 4) + M(4 log2 M - 4); undivided: M'(4 log2 M' - 4).
SelectCost select_cost(const std::vector<std::int64_t>& m_list);

}  // namespace pfqed
