#pragma once

#include <optional>
#include <vector>

#include "nilkit/types.hpp"

namespace nilkit {

// Smith normal form: U * A * V = D with U, V unimodular and
// D diagonal, d_1 | d_2 | ... | d_r, d_i >= 0.
struct SmithResult {
  IntMat d;
  IntMat u;
  IntMat v;
  int rank = 0;  // number of nonzero diagonal entries
  std::vector<Int> invariants() const;
};
SmithResult smith_normal_form(const IntMat& a);

// Column-style Hermite normal form: H = A * V with V unimodular,
// nonzero columns first, each with a positive pivot strictly below
// the previous column's pivot row.
struct HermiteResult {
  IntMat h;
  IntMat v;
  int rank = 0;
};
HermiteResult hermite_normal_form(const IntMat& a);

// basis (columns) of { x : A x = 0 } over Z
IntMat integer_kernel(const IntMat& a);

// one integral solution of A x = b, if any
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b);

// v in the Z-span of the columns of basis?
bool lattice_contains(const IntMat& basis, const IntVec& v);

// smallest k >= 1 with k*v in the column span for all v (columns of vs);
// i.e. the exponent of the image of vs in Z^n / span.  0 if none exists.
Int lattice_saturation_exponent(const IntMat& basis, const IntMat& vs);

}  // namespace nilkit
