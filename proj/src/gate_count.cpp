#include "pfqed/gate_count.hpp"

#include <algorithm>

namespace pfqed {

GateCount& GateCount::operator+=(const GateCount& o) {
  t_gates += o.t_gates;
  cnot += o.cnot;
  rotations += o.rotations;
  hadamard += o.hadamard;
  other_clifford += o.other_clifford;
  ancillae = std::max(ancillae, o.ancillae);
  asymptotic = asymptotic || o.asymptotic;
  return *this;
}

GateCount GateCount::operator*(double k) const {
  GateCount g = *this;
  g.t_gates *= k;
  g.cnot *= k;
  g.rotations *= k;
  g.hadamard *= k;
  g.other_clifford *= k;
  return g;
}

GateCount operator+(GateCount a, const GateCount& b) { return a += b; }

nlohmann::json to_json(const GateCount& g) {
  return {{"t_gates", g.t_gates},   {"cnot", g.cnot},
          {"rotations", g.rotations}, {"hadamard", g.hadamard},
          {"other_clifford", g.other_clifford}, {"ancillae", g.ancillae},
          {"total", g.total()},       {"asymptotic", g.asymptotic}};
}

}  // namespace pfqed
