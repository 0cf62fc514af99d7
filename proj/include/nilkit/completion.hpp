#pragma once

#include "nilkit/isolator.hpp"

namespace nilkit {

// Root extraction in torsion-free nilpotent groups of class <= 3, descending
// the isolated lower central series (torsion-free sections make each layer an
// exact divisibility problem with a unique solution).
class RootSolver {
 public:
  explicit RootSolver(GroupPtr g);  // throws Unsupported on torsion or class > 3
  const GroupPtr& group() const { return grp_; }
  std::optional<Element> root(const Element& g, const Int& n) const;

 private:
  GroupPtr grp_;
  struct Layer {
    Subgroup filtration_term;       // F_i
    QuotientMap mod_next;           // G / F_{i+1}
    AbelianSubgroupStructure section;  // image of F_i in G/F_{i+1}
  };
  std::vector<Layer> layers_;
};

std::optional<Element> nth_root(const Element& g, const Int& n);

struct MalReport {
  Int n;
  int k = 0;
  int trials = 0;
  int roots_found = 0;
  bool all_found = false;
};
// random h in G^{n^k} must all have n-th roots (k = nilpotency class)
MalReport mal_lemma_check(GroupPtr g, const Int& n, int k, int trials,
                          unsigned long seed = 1);

// ---- Q_pi coordinate arithmetic in the class <= 2 completion --------------

// Mal'tsev coordinates with rational exponents over a torsion-free class <= 2
// presentation; integral coordinate vectors embed onto pcgroup elements
struct RationalElement {
  GroupPtr grp;
  RatVec coords;

  bool is_identity() const;
  bool operator==(const RationalElement& o) const { return grp == o.grp && coords == o.coords; }
  bool operator!=(const RationalElement& o) const { return !(*this == o); }
  std::string str() const;
};

// validates the ambient group (torsion-free, class <= 2) and the coordinates
RationalElement rational_element(GroupPtr g, RatVec coords, const PrimeSet& pi);
RationalElement embed_rational(const Element& e);
std::optional<Element> integral_element(const RationalElement& a);

RationalElement rmul(const RationalElement& a, const RationalElement& b);
RationalElement rinv(const RationalElement& a);
// x^q with the binomial C(q,2) correction on commutator coordinates
RationalElement rpow(const RationalElement& a, const Rat& q, const PrimeSet& pi);
RationalElement rcommutator(const RationalElement& a, const RationalElement& b);

// "x1^(1/2)*x2^(-2/3)" against the group's generator names
RationalElement parse_rational_element(const std::string& text, GroupPtr g, const PrimeSet& pi);

struct LiBoundResult {
  Int r = 1;                     // smallest pi-number with H^r <= G
  std::vector<std::pair<Int, std::string>> rejected;  // candidates below r with the failure
  std::vector<Int> generator_powers;  // minimal pi-powers t_i with h_i^{t_i} integral
  IndexValue proof_bound;        // |H : <h_i^{t_i}>| — the subnormal-chain product
};
LiBoundResult lemma_li_bound(const std::vector<RationalElement>& gens, const PrimeSet& pi);

}  // namespace nilkit
