#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/presentation.hpp"

namespace nilkit {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// group element in normal form x_1^{e_1} * ... * x_n^{e_n};
// torsion exponents reduced into [0, order)
class Element {
 public:
  Element() = default;
  Element(GroupPtr g, IntVec e) : grp_(std::move(g)), exp_(std::move(e)) {}

  const GroupPtr& group() const { return grp_; }
  const IntVec& exponents() const { return exp_; }
  const Int& exp(int i) const { return exp_(i); }

  bool is_identity() const { return exp_.size() == 0 || exp_.isZero(); }
  // index of the lowest nonzero exponent, -1 for the identity
  int lead() const;

  Element operator*(const Element& o) const;
  Element inverse() const;
  Element pow(const Int& k) const;
  Element conj(const Element& by) const;  // by^-1 * this * by

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  // lexicographic on exponents, for ordered containers; same group required
  bool operator<(const Element& o) const;

  std::string str() const;

 private:
  GroupPtr grp_;
  IntVec exp_;
};

Element commutator(const Element& a, const Element& b);  // a^-1 b^-1 a b

struct ConsistencyReport {
  bool consistent = true;
  // generator indices of the failing overlap (k > j > i; power overlaps repeat an index)
  std::vector<int> counterexample;
  std::string detail;
};

// Normal-form arithmetic kernel over a structurally valid presentation.
// `create` also runs the consistency check and rejects inconsistent input.
class Group : public std::enable_shared_from_this<Group> {
 public:
  static GroupPtr create(NilpotentPresentation p);
  // skips the consistency check; used by the checker itself
  static GroupPtr create_unchecked(NilpotentPresentation p);

  const NilpotentPresentation& presentation() const { return pres_; }
  int ngens() const { return n_; }
  const Int& order_of(int i) const { return pres_.gens[i].order; }
  int weight_of(int i) const { return pres_.gens[i].weight; }
  int nilpotency_class() const { return pres_.nilpotency_class; }
  bool is_torsion_free_presentation() const;  // no generator carries a finite order

  Element identity() const;
  Element generator(int i) const;
  Element element(const IntVec& raw) const;  // collects the raw exponent vector
  Element collect(const Word& w) const;
  Element collect(const std::string& word_text) const;

  ConsistencyReport check_overlaps() const;

 private:
  explicit Group(NilpotentPresentation p);
  void precompute();

  // normal form of [g_j^{sj}, g_i^{si}] for j > i, s = +-1
  const IntVec& comm_variant(int j, int i, int sj, int si);
  IntVec collect_vec(const Word& w) const;
  void drain(IntVec& nf, std::vector<Term>& pending) const;
  void absorb(IntVec& nf, int g, const Int& e, std::vector<Term>& pending) const;
  void reduce_order(IntVec& nf, int g, std::vector<Term>& pending) const;

  NilpotentPresentation pres_;
  int n_ = 0;
  std::vector<std::vector<bool>> commute_;    // [j][i], j > i: trivial commutator
  std::vector<bool> central_;                 // commutes with every generator
  std::vector<std::vector<bool>> chunk_;      // [j][i]: commutator word is central
  std::vector<bool> tail_central_;
  std::map<std::tuple<int, int, int, int>, IntVec> variants_;  // frozen after construction
};

// consistency via the overlap/associativity conditions
ConsistencyReport check_consistency(const NilpotentPresentation& p);

}  // namespace nilkit
