#pragma once

#include <json.hpp>

namespace pfqed {

// Gate tallies. Exact formulas produce integral values; `asymptotic` marks counts obtained by
// instantiating O(.) expressions with unit constants.
struct GateCount {
  double t_gates = 0;
  double cnot = 0;
  double rotations = 0;
  double hadamard = 0;
  double other_clifford = 0;
  double ancillae = 0;
  bool asymptotic = false;

  double total() const { return t_gates + cnot + rotations + hadamard + other_clifford; }

  GateCount& operator+=(const GateCount& o);
  GateCount operator*(double k) const;
};

GateCount operator+(GateCount a, const GateCount& b);

nlohmann::json to_json(const GateCount& g);

}  // namespace pfqed
