#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "nilkit/arith.hpp"

namespace nilkit {

// freely reduced word over free generators x, y, z, w (or x1..x9)
struct FreeWord {
  std::vector<std::pair<int, long>> terms;  // (generator, nonzero exponent)

  static FreeWord parse(const std::string& text);
  std::string str() const;
  int rank_lower_bound() const;  // 1 + largest generator index used
  long length() const;           // sum of |exponents|
  bool operator==(const FreeWord&) const = default;
  bool operator<(const FreeWord& o) const { return terms < o.terms; }
};

FreeWord reduce_free(FreeWord w);

// finite group as a validated Cayley table
class FiniteGroup {
 public:
  static FiniteGroup from_table(Eigen::MatrixXi table, std::vector<std::string> labels = {});
  // file format: first line n, then n rows of n space-separated indices
  static FiniteGroup parse_table(const std::string& text);
  // "Z/5", "Z/2xZ/2", "S3", "D4" (dihedral of order 8), "Q8"
  static FiniteGroup named(const std::string& name);

  int size() const { return static_cast<int>(table_.rows()); }
  int identity() const { return id_; }
  int mul(int a, int b) const { return table_(a, b); }
  int inv(int a) const { return inv_[a]; }
  int pow(int a, long e) const;
  long order_of(int a) const;
  long exponent() const;
  const std::string& label(int a) const { return labels_[a]; }
  const std::string& name() const { return name_; }

 private:
  FiniteGroup() = default;
  void finish(std::vector<std::string> labels);
  void validate() const;
  Eigen::MatrixXi table_;
  int id_ = 0;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::string name_ = "G";
};

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

int eval_word(const FiniteGroup& g, const FreeWord& w, const std::vector<int>& images);

// all |G|^rank generator assignments (each extends to a unique homomorphism
// of the free group); capped by NILKIT_MAX_ENUM
std::vector<std::vector<int>> enumerate_homs(int rank, const FiniteGroup& g);
void for_each_hom(int rank, const FiniteGroup& g,
                  const std::function<void(const std::vector<int>&)>& fn);

// w in T''_G: every homomorphism killing T kills w
bool closure_membership(const std::vector<FreeWord>& t, const FreeWord& w, const FiniteGroup& g,
                        int rank = 0);

// bitmask of the homomorphisms (in enumeration order) that kill w; the rank
// must keep |G|^rank <= 64
uint64_t kernel_mask64(const FreeWord& w, int rank, const FiniteGroup& g);

// (w in T''_{G1}, w in T''_{G2}); disagreement certifies non-equivalence
std::pair<bool, bool> equivalence_probe(const std::vector<FreeWord>& t, const FreeWord& w,
                                        const FiniteGroup& g1, const FiniteGroup& g2);

}  // namespace nilkit
