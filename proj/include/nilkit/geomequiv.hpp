#pragma once

#include "nilkit/liering.hpp"
#include "nilkit/zariski.hpp"

namespace nilkit {

struct RelationCheck {
  std::string relation;
  std::string lhs_nf;
  std::string rhs_nf;
  bool ok = false;
};

struct DickResult {
  bool homomorphism = false;  // every defining relation maps to the identity
  std::vector<RelationCheck> transcript;
};

// evaluate the defining relations of `source` under the generator images
// (all living in one target group); true iff the map extends to a homomorphism
DickResult dick_check(const GroupPtr& source, const std::vector<Element>& images);

struct EmbeddingWitness {
  GroupPtr source;
  GroupPtr target;
  Int m = 1;
  std::vector<Element> images;
  DickResult relations;
  bool injective = false;
  bool image_contained = false;  // every image lies in target^m
  std::optional<Subgroup> image_in;
  std::vector<std::string> notes;

  bool verified() const { return relations.homomorphism && injective && image_contained; }
};

// the power endomorphism x -> x^m of a relatively free builtin: relations
// verified, injectivity from the scalar m^i action on the graded ring
EmbeddingWitness power_endo_verify(GroupPtr g, const Int& m, const PrimeSet& pi);

// class <= 2 embedding g -> g^m, c -> c^(m^2) over a chosen pi-isolated
// central subgroup containing the derived subgroup with torsion-free quotient
EmbeddingWitness a2_verify(GroupPtr g, const PrimeSet& pi, const Int& m, const Subgroup& central);

struct AbelianStructure {
  Int rank = 0;                          // s in Z^s x (torsion)
  std::vector<Int> invariant_factors;    // SNF invariants > 1
  std::vector<Int> prime_power_factors;  // the same torsion split into p^a parts
  bool pi_valid = false;                 // no torsion factor divisible by a prime of pi
  std::string completion;                // descriptor of the pi-completion
};

// rows of `relations` are relators over the columns' generators
AbelianStructure abelian_structure(const IntMat& relations, const PrimeSet& pi);

// pi-torsion-free and pi-divisible, checked by brute force over the table
bool is_pi_complete_finite(const FiniteGroup& g, const PrimeSet& pi);

struct CriterionReport {
  std::vector<Int> ms;
  std::vector<EmbeddingWitness> witnesses;
  std::string central_note;
  std::string statement;
  bool all_verified = false;
};

// produce a G -> G^m witness for each m, by the power-endomorphism route for
// relatively free builtins and the class-2 route otherwise
CriterionReport criterion_run(GroupPtr g, const PrimeSet& pi, const std::vector<Int>& ms);

}  // namespace nilkit
