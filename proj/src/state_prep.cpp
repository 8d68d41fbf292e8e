#include "pfqed/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

constexpr std::int64_t kMaxM = std::int64_t{1} << 20;

bool is_pow2(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(std::int64_t x) {
  int k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

void check_config(const PrepConfig& cfg) {
  if (cfg.n_p < 3) throw InvalidArgument("n_p must be >= 3");
  if (cfg.M < 4 || !is_pow2(cfg.M)) throw InvalidArgument("M must be a power of two >= 4");
  if (cfg.M > kMaxM) throw GuardExceeded("M above 2^20");
  std::int64_t branches = 0;
  for (int mu = 2; mu <= cfg.n_p; ++mu) {
    if (3 * mu > 62) throw GuardExceeded("state-prep enumeration too large");
    branches += std::int64_t{1} << (3 * mu);
    if (branches > kPrepBranchGuard) throw GuardExceeded("state-prep enumeration above 2^24 branches");
  }
}

// Number of m in [0, M) with m^2 s < a^2.
std::int64_t accepted(std::int64_t a, std::int64_t s, std::int64_t M) {
  std::int64_t lo = 0, hi = M;  // predicate true at lo = 0 since a > 0
  while (lo < hi) {
    const std::int64_t mid = (lo + hi + 1) / 2;
    if (mid * mid * s < a * a) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo + 1;
}

// Each controlled-H costs 2 H, 2 T and 1 CNOT.
GateCount controlled_h(double count) {
  GateCount g;
  g.hadamard = 2 * count;
  g.t_gates = 2 * count;
  g.cnot = count;
  return g;
}

}  // namespace

int prep_bits_for_grid(double N) {
  if (!(N >= 1)) throw InvalidArgument("N must be >= 1");
  const double side = std::round(std::cbrt(N));
  if (std::abs(side * side * side - N) > 1e-6 * N) throw InvalidArgument("N must be a perfect cube");
  const auto s = static_cast<std::int64_t>(side) + 1;
  if (!is_pow2(s)) throw InvalidArgument("N^{1/3} + 1 must be a power of two");
  return 1 + log2_exact(s);
}

int box_of(const std::array<std::int64_t, 3>& v) {
  const std::int64_t m = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  if (m == 0) throw InvalidArgument("the zero vector belongs to no box");
  int k = 0;
  while ((std::int64_t{1} << (k + 1)) <= m) ++k;  // 2^k <= m < 2^{k+1}
  return k + 2;
}

PrepResult simulate_prep(const PrepConfig& cfg) {
  check_config(cfg);
  const int n = cfg.n_p;
  const double norm = std::ldexp(1.0, 2 * (n + 1)) - 16;  // 4^{n+1} - 16
  const double ideal_const = 3.0 / (4.0 * norm);
  const double M = static_cast<double>(cfg.M);

  PrepResult res;
  res.cfg = cfg;
  for (int mu = 2; mu <= n; ++mu) {
    const double w = 3.0 / (norm * std::ldexp(1.0, mu));  // per bit pattern
    const std::int64_t patterns = std::int64_t{1} << mu;   // per coordinate
    const std::int64_t half = std::int64_t{1} << (mu - 1);
    const std::int64_t inner = std::int64_t{1} << (mu - 2);
    const std::int64_t a = inner * cfg.M;
    auto decode = [&](std::int64_t bits, bool& minus_zero) {
      const bool sign = (bits & half) != 0;
      const std::int64_t mag = bits & (half - 1);
      minus_zero = sign && mag == 0;
      return sign ? -mag : mag;
    };
    for (std::int64_t bx = 0; bx < patterns; ++bx) {
      for (std::int64_t by = 0; by < patterns; ++by) {
        for (std::int64_t bz = 0; bz < patterns; ++bz) {
          bool mzx = false, mzy = false, mzz = false;
          const std::array<std::int64_t, 3> v = {decode(bx, mzx), decode(by, mzy), decode(bz, mzz)};
          if (mzx || mzy || mzz) {
            res.failure.minus_zero += w;
            continue;
          }
          if (std::abs(v[0]) < inner && std::abs(v[1]) < inner && std::abs(v[2]) < inner) {
            res.failure.inner_box += w;
            continue;
          }
          const std::int64_t s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
          const std::int64_t q = accepted(a, s, cfg.M);
          PrepEntry e;
          e.v = v;
          e.mu = mu;
          e.Q = q;
          e.amp2 = w * static_cast<double>(q) / M;
          e.ideal = ideal_const / std::sqrt(static_cast<double>(s));
          res.failure.inequality += w * static_cast<double>(cfg.M - q) / M;
          res.entries.push_back(e);
        }
      }
    }
  }
  for (const auto& e : res.entries) {
    res.success += e.amp2;
    res.deviation += std::abs(e.amp2 - e.ideal);
    const double len = std::sqrt(static_cast<double>(e.v[0] * e.v[0] + e.v[1] * e.v[1] + e.v[2] * e.v[2]));
    res.max_ratio_error = std::max(res.max_ratio_error, std::abs(e.amp2 * len / ideal_const - 1));
    res.per_box_mass[e.mu] += e.amp2;
  }
  std::sort(res.entries.begin(), res.entries.end(),
            [](const PrepEntry& x, const PrepEntry& y) { return x.v < y.v; });
  return res;
}

nlohmann::json to_json(const PrepResult& r, bool include_entries) {
  nlohmann::json boxes = nlohmann::json::object();
  for (const auto& [mu, mass] : r.per_box_mass) boxes[std::to_string(mu)] = mass;
  nlohmann::json j = {{"n_p", r.cfg.n_p},
                      {"M", r.cfg.M},
                      {"success_prob", r.success},
                      {"failure_prob", r.failure.total()},
                      {"failure",
                       {{"mu_register", r.failure.mu_register},
                        {"minus_zero", r.failure.minus_zero},
                        {"inner_box", r.failure.inner_box},
                        {"inequality", r.failure.inequality}}},
                      {"deviation_sum", r.deviation},
                      {"max_ratio_error", r.max_ratio_error},
                      {"per_box_mass", boxes}};
  if (include_entries) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : r.entries) {
      rows.push_back({{"v", e.v}, {"mu", e.mu}, {"Q", e.Q}, {"amp2", e.amp2}, {"ideal", e.ideal}});
    }
    j["entries"] = rows;
  }
  return j;
}

GateCount PrepGates::total() const {
  GateCount g = mu_ladder;
  g += coordinate_hadamards;
  g += minus_zero_flags;
  g += box_test;
  g += inequality_test;
  return g;
}

PrepGates prep_gate_estimate(const PrepConfig& cfg) {
  if (cfg.n_p < 3) throw InvalidArgument("n_p must be >= 3");
  if (cfg.M < 1 || !is_pow2(cfg.M)) throw InvalidArgument("M must be a power of two");
  const double np = cfg.n_p;
  const double nM = log2_exact(cfg.M);
  PrepGates g;
  g.mu_ladder = controlled_h(np);
  g.coordinate_hadamards = controlled_h(3 * np);
  g.minus_zero_flags.t_gates = 2 * (4 * np - 8);
  g.minus_zero_flags.cnot = 2 * (4 * np - 7);
  g.minus_zero_flags.ancillae = np - 1;
  g.box_test.other_clifford = np;
  g.box_test.asymptotic = true;
  // With M = 1 the m register is empty and every branch passes, so no test is built.
  if (nM > 0) {
    g.inequality_test.other_clifford = np * np + np + nM * np + nM;
    g.inequality_test.asymptotic = true;
  }
  return g;
}

nlohmann::json to_json(const PrepGates& g) {
  return {{"mu_ladder", to_json(g.mu_ladder)},
          {"coordinate_hadamards", to_json(g.coordinate_hadamards)},
          {"minus_zero_flags", to_json(g.minus_zero_flags)},
          {"box_test", to_json(g.box_test)},
          {"inequality_test", to_json(g.inequality_test)},
          {"total", to_json(g.total())}};
}

}  // namespace pfqed
