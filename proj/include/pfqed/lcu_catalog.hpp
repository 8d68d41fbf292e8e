#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pfqed/dense.hpp"
#include "pfqed/lcu.hpp"

namespace pfqed {

// Named LCU generator with its parameters. Link operators act on d = 2*lambda levels;
// stencils act on a ring of `ring` points (0 means d).
struct GeneratorSpec {
  std::string op;  // signature, integer, A, A2, A2bits, E2, U, grad, lap
  std::size_t lambda = 2;
  double delta = 1;
  int a = 1;
  double h = 1;
  std::int64_t ring = 0;
  std::vector<double> values;  // diagonal entries for signature / integer
};

const std::vector<std::string>& generator_names();

LcuDecomposition build_generator(const GeneratorSpec& g);

// Operator built without the LCU machinery: diag(values), op_A, op_A^2, op_E2, op_U, or the
// circulant stencil matrix.
DenseOperator direct_operator(const GeneratorSpec& g);

// Printed limits on (term count, l1) for the generator.
struct TableRow {
  double max_terms = 0;
  double max_l1 = 0;
  std::string note;
};

TableRow table_row(const GeneratorSpec& g);

}  // namespace pfqed
