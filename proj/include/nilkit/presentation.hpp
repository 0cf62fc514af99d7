#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/errors.hpp"
#include "nilkit/types.hpp"

namespace nilkit {

// one letter of a word: generator index and a nonzero exponent
struct Term {
  int gen;
  Int exp;
  bool operator==(const Term&) const = default;
};

// word over the generators; free-reduced form merges adjacent equal generators
using Word = std::vector<Term>;

Word free_reduce(Word w);
Word inverse_word(const Word& w);

// generator := [gen_hi, gen_lo]^sign, used to derive endomorphism images
struct CommutatorDefinition {
  int hi, lo;
  int sign;  // +1 or -1
};

struct GeneratorDecl {
  std::string name;
  Int order = 0;    // 0 = infinite
  Word power_tail;  // value of g^order, word over higher generators; empty = identity
  int weight = 1;
  std::optional<CommutatorDefinition> definition;
};

// Weighted nilpotent (polycyclic) presentation.  Commutator relations are
// stored for pairs (j, i) with j > i and give the value of [g_j, g_i] as a
// word over generators above j; absent pairs commute.
struct NilpotentPresentation {
  std::string name;
  std::vector<GeneratorDecl> gens;
  std::map<std::pair<int, int>, Word> comm;
  int nilpotency_class = 1;
  bool relatively_free = false;

  int ngens() const { return static_cast<int>(gens.size()); }
  int index_of(const std::string& gen_name) const;  // -1 if unknown
  const Word* commutator_word(int j, int i) const;  // nullptr if trivial

  // structural checks: ordering of relation right-hand sides, torsion orders,
  // weight compatibility.  Called by the parser and the builtin factory.
  void validate() const;
  // recompute weights from the commutator relations (declared gens start at 1)
  // and set nilpotency_class to the maximal weight
  void infer_weights();

  bool operator==(const NilpotentPresentation& o) const;
};

// Presentation text:
//   group <name>
//   gen <g> [order <e>]
//   rel [<g>,<h>] = <word>      (h before g in declaration order)
//   rel <g>^<e> = <word>
// word ::= `1` | term (`*` term)*   term ::= ident (`^` integer)?
NilpotentPresentation parse_presentation(const std::string& text);
std::string render_presentation(const NilpotentPresentation& p);

// word parsing against a presentation's generator names ("x^2*y^-1", "1")
Word parse_word(const std::string& text, const NilpotentPresentation& p);
std::string render_word(const Word& w, const NilpotentPresentation& p);

// named example groups; accepts "heisenberg", "example2",
// "free_nilpotent:<class>,<rank>", "abelian:<d1>,<d2>,..."
NilpotentPresentation builtin(const std::string& spec);

NilpotentPresentation heisenberg_presentation();
NilpotentPresentation example2_presentation();
NilpotentPresentation free_nilpotent_presentation(int nil_class, int rank);
NilpotentPresentation abelian_presentation(const std::vector<Int>& invariant_factors);

}  // namespace nilkit
