#pragma once

#include <optional>
#include <vector>

#include "nilkit/arith.hpp"
#include "nilkit/pcgroup.hpp"

namespace nilkit {

// Echelonized induced generating sequence: rows with strictly increasing
// lead generators, positive lead exponents (dividing the generator order on
// torsion levels), entries at deeper lead positions fully reduced.  The
// canonical form is unique per subgroup, so == decides subgroup equality.
class Subgroup {
 public:
  static Subgroup generated(GroupPtr g, std::vector<Element> gens, bool normal = false);
  static Subgroup whole(GroupPtr g);
  static Subgroup trivial(GroupPtr g);

  const GroupPtr& group() const { return grp_; }
  const std::vector<Element>& rows() const { return rows_; }
  bool is_trivial() const { return rows_.empty(); }

  bool contains(const Element& g) const;
  // g as a product of rows: row_{i_k}^{q_k} * ... * row_{i_1}^{q_1}
  struct Witness {
    std::vector<std::pair<int, Int>> factors;  // (row index, exponent), product order
    Element evaluate(const Subgroup& h) const;
  };
  std::optional<Witness> membership(const Element& g) const;

  bool subset_of(const Subgroup& other) const;
  bool is_normal() const;

  // canonical representative of the coset g * this
  Element reduce_mod(const Element& g) const;

  bool operator==(const Subgroup& o) const { return grp_ == o.grp_ && rows_ == o.rows_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Subgroup(GroupPtr g, std::vector<Element> rows) : grp_(std::move(g)), rows_(std::move(rows)) {}
  GroupPtr grp_;
  std::vector<Element> rows_;
};

struct IndexValue {
  bool finite = true;
  Int value = 1;  // meaningful when finite
  std::string str() const { return finite ? value.get_str() : "infinite"; }
};

// |K : H| for H <= K, via per-level relative indices along the echelon
IndexValue subgroup_index(const Subgroup& k, const Subgroup& h);

Subgroup normal_closure(GroupPtr g, const std::vector<Element>& gens);

// gamma_1 = G, gamma_{i+1} = [gamma_i, G]; ends with the trivial subgroup
std::vector<Subgroup> lower_central_series(GroupPtr g);

// the verbal subgroup G^m, via the finite quotient G / ncl(g_i^m)
Subgroup power_subgroup(GroupPtr g, const Int& m);

// canonical coset representatives of G/N (N of finite index), identity first
std::vector<Element> enumerate_cosets(GroupPtr g, const Subgroup& n);
bool has_finite_index(GroupPtr g, const Subgroup& n);

// quotient presentation G/N for normal N, with projection and lift maps
struct QuotientMap {
  GroupPtr source;
  GroupPtr quotient;
  Subgroup kernel;
  Element project(const Element& g) const;
  Element lift(const Element& q) const;
  Subgroup project_subgroup(const Subgroup& h) const;
  Subgroup preimage(const Subgroup& hbar) const;
};
QuotientMap make_quotient(GroupPtr g, const Subgroup& n);

struct LemmaRobReport {
  std::vector<std::pair<int, Int>> generator_powers;  // generator -> pi-number r with g^r in H
  IndexValue index;
  bool index_is_pi_number = false;
  std::vector<std::pair<Element, Int>> samples;  // sampled g -> positive pi-power in H
  bool ok = false;
};
// throws HypothesisFailed when some generator has no pi-power in H within the search bound
LemmaRobReport lemma_rob_check(GroupPtr g, const Subgroup& h, const PrimeSet& pi,
                               int n_samples = 20, unsigned long seed = 1);

// smallest pi-number r <= bound with g^r in H
std::optional<Int> pi_power_into(const Element& g, const Subgroup& h, const PrimeSet& pi,
                                 const Int& bound);

}  // namespace nilkit
