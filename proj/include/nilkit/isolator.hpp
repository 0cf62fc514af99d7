#pragma once

#include "nilkit/linalg.hpp"
#include "nilkit/subgroup.hpp"

namespace nilkit {

// order of g, searched up to `bound`; throws TooLarge past the bound
Int element_order(const Element& g, const Int& bound = Int(1) << 16);

// all elements of a finite subgroup (size capped by NILKIT_MAX_ENUM)
std::vector<Element> enumerate_subgroup(const Subgroup& s);

// An abelian subgroup S of a pc group, restructured as  Z^f (+) prod Z/d_k
// via the Smith normal form of its relation lattice.  Basis elements are
// concrete group elements; coords() inverts the basis on members of S.
struct AbelianSubgroupStructure {
  Subgroup sub;
  std::vector<Int> invariants;  // 0 = infinite order, otherwise d_k >= 2
  std::vector<Element> basis;
  IntMat u, uinv;               // row-exponent coords x  <->  basis coords y = u x
  std::vector<int> kept;        // basis columns kept after dropping trivial factors

  IntVec coords(const Element& s) const;
  Element from_coords(const IntVec& y) const;
};
AbelianSubgroupStructure abelian_structure_of(const Subgroup& s);

struct TorsionReport {
  Subgroup torsion;                                   // all finite-order elements
  std::vector<std::pair<Element, Int>> element_orders;  // every torsion element with its order
  Subgroup pi_part;                                   // product of the Sylow p-parts, p in pi
};

// torsion through the abelian sections of the lower central series
TorsionReport torsion_subgroup(GroupPtr g, const PrimeSet& pi = PrimeSet::all());

Subgroup pi_torsion_subgroup(GroupPtr g, const PrimeSet& pi);
bool is_pi_torsion_free(GroupPtr g, const PrimeSet& pi);

struct IsolatorResult {
  Subgroup isolator;
  // per echelon row of the isolator: a pi-number n with row^n in H, verified
  std::vector<std::pair<Element, Int>> certificates;
};

// I_pi(H) = { g : g^n in H for some pi-number n }, H normal in G
IsolatorResult pi_isolator(GroupPtr g, const Subgroup& h, const PrimeSet& pi);

}  // namespace nilkit
