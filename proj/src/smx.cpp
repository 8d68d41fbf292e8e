#include "pfqed/smx.hpp"

#include <numeric>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

// Clifford+T cost of one compute/uncompute pair of C^k X.
std::int64_t mcx_t(std::int64_t k) { return k <= 1 ? 0 : 4 * k - 4; }
std::int64_t mcx_cnot(std::int64_t k) { return k <= 0 ? 0 : 4 * k - 3; }

constexpr std::int64_t kMaxM = std::int64_t{1} << 40;

}  // namespace

std::int64_t pad_pow2(std::int64_t m) {
  if (m < 1) throw InvalidArgument("count must be >= 1");
  if (m > kMaxM) throw GuardExceeded("count exceeds 2^40");
  std::int64_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

int ceil_log2(std::int64_t m) {
  const std::int64_t p = pad_pow2(m);
  int k = 0;
  while ((std::int64_t{1} << k) < p) ++k;
  return k;
}

Partition make_partition(std::int64_t M, std::vector<int> widths) {
  Partition p;
  p.requested_M = M;
  p.M = pad_pow2(M);
  const int log_m = ceil_log2(p.M);
  if (widths.empty()) throw InvalidArgument("partition needs at least one group");
  int sum = 0;
  for (int w : widths) {
    if (w < 1) throw InvalidArgument("every group must hold at least one control");
    sum += w;
  }
  if (sum != log_m) throw InvalidArgument("group widths must sum to log2(M)");
  p.widths = std::move(widths);
  return p;
}

Partition equal_partition(std::int64_t M, int n) {
  const int log_m = ceil_log2(M);
  if (n < 1 || log_m % n != 0) throw InvalidArgument("n must divide log2(M)");
  return make_partition(M, std::vector<int>(static_cast<std::size_t>(n), log_m / n));
}

std::int64_t t_count(const Partition& p) {
  std::int64_t total = 0;
  for (int w : p.widths) total += (std::int64_t{1} << w) * mcx_t(w);
  return total + p.M * mcx_t(static_cast<std::int64_t>(p.widths.size()));
}

std::int64_t cnot_count(const Partition& p) {
  std::int64_t total = 0;
  for (int w : p.widths) total += (std::int64_t{1} << w) * mcx_cnot(w);
  const auto n = static_cast<std::int64_t>(p.widths.size());
  if (n >= 2) total += p.M * mcx_cnot(n);
  return total;
}

std::int64_t ancilla_count(const Partition& p) {
  std::int64_t total = 0;
  for (int w : p.widths) total += std::int64_t{1} << w;
  return total;
}

std::int64_t t_savings_equal(std::int64_t M, int n) {
  const int log_m = ceil_log2(M);
  if (n < 1 || log_m % n != 0) throw InvalidArgument("n must divide log2(M)");
  const std::int64_t m = pad_pow2(M);
  const std::int64_t root = std::int64_t{1} << (log_m / n);
  return 4 * (m - root) * (log_m - n);
}

PartitionChoice optimize_partition(std::int64_t M) {
  const int log_m = ceil_log2(M);
  if (log_m < 1) throw InvalidArgument("M must be >= 2");
  PartitionChoice best;
  bool have = false;
  for (int n = 1; n <= log_m; ++n) {
    if (log_m % n != 0) continue;
    PartitionChoice c;
    c.partition = equal_partition(M, n);
    c.t_count = t_count(c.partition);
    c.cnot = cnot_count(c.partition);
    c.ancillae = ancilla_count(c.partition);
    c.savings = t_savings_equal(M, n);
    if (!have || c.t_count < best.t_count) {
      best = c;
      have = true;
    }
  }
  return best;
}

SelectCost select_cost(const std::vector<std::int64_t>& m_list) {
  if (m_list.empty()) throw InvalidArgument("select_cost needs at least one sub-Hamiltonian");
  SelectCost out;
  out.M = pad_pow2(static_cast<std::int64_t>(m_list.size()));
  const std::int64_t log_m = ceil_log2(out.M);
  std::int64_t t = 0, cx = 0, raw_total = 0;
  for (auto mi : m_list) {
    const std::int64_t padded = pad_pow2(mi);
    const std::int64_t controls = ceil_log2(padded) + 1;
    t += padded * mcx_t(controls);
    cx += padded * mcx_cnot(controls);
    raw_total += mi;
  }
  if (out.M > 1) {
    t += out.M * mcx_t(log_m);
    cx += out.M * mcx_cnot(log_m);
  }
  out.M_prime = pad_pow2(raw_total);
  const std::int64_t log_mp = ceil_log2(out.M_prime);
  out.divided.t_gates = static_cast<double>(t);
  out.divided.cnot = static_cast<double>(cx);
  out.undivided.t_gates = static_cast<double>(out.M_prime * mcx_t(log_mp));
  out.undivided.cnot = static_cast<double>(out.M_prime * mcx_cnot(log_mp));
  out.t_difference = t - out.M_prime * mcx_t(log_mp);
  out.cnot_difference = cx - out.M_prime * mcx_cnot(log_mp);
  return out;
}

}  // namespace pfqed
