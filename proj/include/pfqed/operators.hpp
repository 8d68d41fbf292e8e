#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pfqed/dense.hpp"
#include "pfqed/lattice.hpp"

namespace pfqed {

enum class FragmentId { H1pi, H2pi, H3pi, Hf1, Hf2, Hs, Hvee, Hvne };

inline constexpr FragmentId kAllFragments[] = {FragmentId::H1pi, FragmentId::H2pi,
                                               FragmentId::H3pi, FragmentId::Hf1,
                                               FragmentId::Hf2,  FragmentId::Hs,
                                               FragmentId::Hvee, FragmentId::Hvne};

std::string fragment_name(FragmentId id);
FragmentId fragment_from_name(const std::string& name);

// Single-link operators, d = 2 * lambda, basis index b = eps + lambda.
DenseOperator op_E2(std::size_t lambda);
DenseOperator op_U(std::size_t lambda);
DenseOperator op_A(std::size_t lambda, double delta);

// U1 U2 U3^dag U4^dag + h.c. on four link registers ordered as in Plaquette::links.
DenseOperator op_W2_pair(std::size_t lambda);

// Registers kept in a truncated oracle. Particles 0..particles-1 are retained, each with a
// position register of dimension N (unless `positions` is cleared) and, when `spin` is set, a
// spin qubit in front of it. Links follow the particles in the listed order.
struct Support {
  int particles = 0;
  bool spin = false;
  bool positions = true;
  std::vector<LinkIndex> links;
};

std::vector<std::size_t> support_dims(const SimulationParams& p, const Support& s);
std::size_t support_dim(const SimulationParams& p, const Support& s);

// One register factor of a structured term.
struct OperatorFactor {
  std::size_t slot = 0;
  DenseOperator op;
};

// coeff times the product of its factors; factors sharing a slot multiply left to right.
struct OperatorMonomial {
  cplx coeff{1, 0};
  std::vector<OperatorFactor> factors;
};

// One summand of a fragment's defining sum. Coulomb summands are diagonal operators on
// `diagonal_slots` and carry no monomials.
struct FragmentTerm {
  std::vector<OperatorMonomial> monomials;
  std::vector<std::size_t> diagonal_slots;
};

// Retained summands without forming the full operator (no dimension guard).
std::vector<FragmentTerm> fragment_terms(FragmentId id, const SimulationParams& p, const Support& s);

// Every register of the instance: all eta particles with spin and position, all 3N links.
Support full_support(const SimulationParams& p);

// Sufficient test for [a, b] = 0: every pair of monomials commutes register by register, and
// diagonal summands only meet diagonal factors.
bool terms_commute(const FragmentTerm& a, const FragmentTerm& b);

// Fragment restricted to the support: a term is kept only when every register it touches is
// retained. Requires strictly derived params (integral grid side, power-of-two cutoff).
// Nucleus kappa sits at grid point kappa mod N; coincident points contribute 0.
DenseOperator op_fragment(FragmentId id, const SimulationParams& p, const Support& s);

// Number of terms of the fragment's defining sum that survive the truncation.
std::size_t retained_terms(FragmentId id, const SimulationParams& p, const Support& s);
// Number of terms in the full sum (3*eta*N for the kinetic and spin pieces, and so on).
double total_terms(FragmentId id, const SimulationParams& p);

// Closed-form l1 bound for the whole fragment.
double fragment_l1_bound(FragmentId id, const SimulationParams& p);
// That bound shared evenly over total_terms, times the retained count.
double support_l1_bound(FragmentId id, const SimulationParams& p, const Support& s);

// Sum over ordered pairs q != r of 1 / (delta * ||q - r||) on a side^3 grid (non-periodic).
double coulomb_sum(double N, double delta);

}  // namespace pfqed
