#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfqed/dense.hpp"
#include "pfqed/lattice.hpp"
#include "pfqed/operators.hpp"

namespace pfqed {

// Row/column labels of the pairwise commutator table. Hpi = H1pi + H2pi + H3pi.
enum class CommGroup { Hpi, Hvee, Hvne, Hf1, Hf2, Hs };

inline constexpr CommGroup kAllGroups[] = {CommGroup::Hpi, CommGroup::Hvee, CommGroup::Hvne,
                                           CommGroup::Hf1, CommGroup::Hf2,  CommGroup::Hs};

std::string group_name(CommGroup g);
CommGroup group_from_name(const std::string& name);
std::vector<FragmentId> group_fragments(CommGroup g);

// Printed table entry; symmetric in its arguments, 0 on the diagonal and on printed zeros.
// The [Hpi, Hvne] entry uses c in the second denominator, as in its derivation.
double bound_pair(CommGroup a, CommGroup b, const SimulationParams& p);

bool printed_zero(CommGroup a, CommGroup b);

struct NestedGroup {
  double inner = 0;            // bound on the innermost (p'+1)-fold commutators of the group
  std::vector<double> norms;   // norms of the Hamiltonians wrapped around it
};

// sum over groups of 2^{p-(p'+1)} * inner * (sum norms)^{p-p'}.
double nested_bound(const std::vector<NestedGroup>& groups, int p, int p_prime);

DenseOperator op_group(CommGroup g, const SimulationParams& p, const Support& s);

// ||[op_group(a), op_group(b)]|| on the support.
double exact_pair_norm(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s);

// True when every retained summand of a commutes with every retained summand of b.
bool structurally_commute(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s);

// Number of (summand of a, summand of b) pairs that fail the structural commutation test.
std::size_t interacting_pairs(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s);

// bound_pair scaled by interacting pairs on the support over interacting pairs on the full
// instance. Used to compare against exact norms on truncations.
double support_bound(CommGroup a, CommGroup b, const SimulationParams& p, const Support& s);

// Every table entry for the given parameters.
nlohmann::json commutator_table(const SimulationParams& p);

}  // namespace pfqed
