#pragma once

#include "nilkit/completion.hpp"

namespace nilkit {

// G_i = I_pi(gamma_i(G)) for i = 1..c, terminated by the literal trivial
// subgroup; a central filtration whenever the group is pi-torsion-free
std::vector<Subgroup> isolator_filtration(GroupPtr g, const PrimeSet& pi);

// [G_i, G_j] <= G_{i+j} on echelon generators (terms beyond the filtration
// length count as trivial)
bool check_central_filtration(GroupPtr g, const std::vector<Subgroup>& filtration);

struct LieComponent {
  int degree = 1;
  std::vector<Int> invariants;  // 0 = a Z summand
  std::vector<Element> basis;   // coset representatives in G
  AbelianSubgroupStructure section;
  QuotientMap mod_next;

  int dim() const { return static_cast<int>(invariants.size()); }
  // coordinates of v (must lie in G_degree) in this component
  IntVec coords_of(const Element& v) const;
};

struct GradedLieRing {
  GroupPtr grp;
  PrimeSet pi;
  std::vector<Subgroup> filtration;
  std::vector<LieComponent> components;  // degrees 1..len(filtration)-1
  // (degree i, basis index a, degree j, basis index b) -> coords in degree i+j
  std::map<std::tuple<int, int, int, int>, IntVec> brackets;
  std::vector<std::string> warnings;  // non-pi-torsion-free components

  const LieComponent& component(int degree) const { return components.at(degree - 1); }
  int max_degree() const { return static_cast<int>(components.size()); }
  // zero vector when i+j is past the top degree
  IntVec bracket(int deg_i, int a, int deg_j, int b) const;
};

GradedLieRing graded_ring(GroupPtr g, const PrimeSet& pi);

// evaluate a generator-image map on an element, x -> prod images[i]^{e_i}
Element apply_generator_map(const std::vector<Element>& images, const Element& e);

// x -> x^m on the free generators, pushed through the stored commutator
// definitions of the derived generators; requires every non-free generator
// to carry a definition
std::vector<Element> power_map_images(const GroupPtr& g, const Int& m);

struct InducedEndomorphism {
  std::vector<IntMat> matrices;           // one per degree
  std::vector<bool> degree_kernel_trivial;
  bool kernel_trivial = true;
};

// matrices of the induced map on each graded component; throws
// InvalidArgument when the images do not preserve the filtration
InducedEndomorphism induced_endomorphism(const GradedLieRing& l,
                                         const std::vector<Element>& images);

}  // namespace nilkit
