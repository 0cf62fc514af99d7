#include "nilkit/geomequiv.hpp"

#include <set>
#include <sstream>

namespace nilkit {

namespace {

Element eval_word_images(const GroupPtr& target, const std::vector<Element>& images,
                         const Word& w) {
  Element out = target->identity();
  for (const Term& t : w) out = out * images[t.gen].pow(t.exp);
  return out;
}

}  // namespace

DickResult dick_check(const GroupPtr& source, const std::vector<Element>& images) {
  if (static_cast<int>(images.size()) != source->ngens())
    throw InvalidArgument("dick_check needs an image for every generator");
  GroupPtr target = images.empty() ? source : images[0].group();
  for (const Element& im : images)
    if (im.group() != target) throw GroupMismatch("images must live in one target group");
  DickResult out;
  out.homomorphism = true;
  const auto& pres = source->presentation();
  for (const auto& [pair, w] : pres.comm) {
    if (w.empty() && commutator(images[pair.first], images[pair.second]).is_identity())
      continue;  // trivial relations with commuting images need no transcript line
    Element lhs = commutator(images[pair.first], images[pair.second]);
    Element rhs = eval_word_images(target, images, w);
    RelationCheck rc{"[" + pres.gens[pair.first].name + "," + pres.gens[pair.second].name +
                         "] = " + render_word(w, pres),
                     lhs.str(), rhs.str(), lhs == rhs};
    out.homomorphism = out.homomorphism && rc.ok;
    out.transcript.push_back(std::move(rc));
  }
  // implicit trivial commutator relations
  for (int j = 1; j < source->ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      if (pres.comm.count({j, i})) continue;
      Element lhs = commutator(images[j], images[i]);
      if (lhs.is_identity()) continue;
      RelationCheck rc{"[" + pres.gens[j].name + "," + pres.gens[i].name + "] = 1", lhs.str(),
                       "1", false};
      out.homomorphism = false;
      out.transcript.push_back(std::move(rc));
    }
  for (int i = 0; i < source->ngens(); ++i) {
    if (pres.gens[i].order == 0) continue;
    Element lhs = images[i].pow(pres.gens[i].order);
    Element rhs = eval_word_images(target, images, pres.gens[i].power_tail);
    RelationCheck rc{pres.gens[i].name + "^" + pres.gens[i].order.get_str() + " = " +
                         render_word(pres.gens[i].power_tail, pres),
                     lhs.str(), rhs.str(), lhs == rhs};
    out.homomorphism = out.homomorphism && rc.ok;
    out.transcript.push_back(std::move(rc));
  }
  return out;
}

EmbeddingWitness power_endo_verify(GroupPtr g, const Int& m, const PrimeSet& pi) {
  if (!is_pi_number(m, pi))
    throw InvalidArgument("invalid-argument: " + m.get_str() + " is not a " + pi.str() +
                          "-number");
  if (!g->presentation().relatively_free)
    throw Unsupported("power_endo_verify needs a relatively free builtin");
  EmbeddingWitness w;
  w.source = w.target = g;
  w.m = m;
  w.images = power_map_images(g, m);
  w.relations = dick_check(g, w.images);
  if (!w.relations.homomorphism)
    throw Error("power map failed its relation check on a relatively free group");
  GradedLieRing l = graded_ring(g, pi);
  InducedEndomorphism endo = induced_endomorphism(l, w.images);
  Int scale = 1;
  for (int deg = 1; deg <= l.max_degree(); ++deg) {
    scale = deg == 1 ? m : scale * m;
    const IntMat& mat = endo.matrices[deg - 1];
    IntMat expect = IntMat::Identity(mat.rows(), mat.cols()) * scale;
    if (mat != expect)
      throw Error("degree-" + std::to_string(deg) + " action is not the scalar m^" +
                  std::to_string(deg));
    w.notes.push_back("degree " + std::to_string(deg) + " acts as " + scale.get_str() +
                      " * identity");
  }
  w.injective = endo.kernel_trivial;
  w.image_in = power_subgroup(g, m);
  w.image_contained = true;
  for (const Element& im : w.images)
    w.image_contained = w.image_contained && w.image_in->contains(im);
  return w;
}

EmbeddingWitness a2_verify(GroupPtr g, const PrimeSet& pi, const Int& m,
                           const Subgroup& central) {
  if (!is_pi_number(m, pi))
    throw InvalidArgument("invalid-argument: " + m.get_str() + " is not a " + pi.str() +
                          "-number");
  if (g->nilpotency_class() > 2) throw Unsupported("a2_verify needs nilpotency class <= 2");
  if (central.group() != g) throw GroupMismatch("central subgroup of a different group");

  Subgroup pit = pi_torsion_subgroup(g, pi);
  if (!pit.is_trivial())
    throw HypothesisFailed("hypothesis-failed: G is not pi-torsion-free",
                           "pi-torsion element " + pit.rows()[0].str());
  for (const Element& r : central.rows())
    for (int i = 0; i < g->ngens(); ++i)
      if (!commutator(r, g->generator(i)).is_identity())
        throw HypothesisFailed("hypothesis-failed: the chosen subgroup is not central",
                               r.str() + " does not commute with " +
                                   g->presentation().gens[i].name);
  Subgroup derived = lower_central_series(g)[1];
  if (!derived.subset_of(central))
    throw HypothesisFailed("hypothesis-failed: central subgroup must contain G'",
                           "missing " + derived.str());
  if (pi_isolator(g, central, pi).isolator != central)
    throw HypothesisFailed("hypothesis-failed: central subgroup is not pi-isolated",
                           central.str());
  QuotientMap qm = make_quotient(g, central);
  TorsionReport qt = torsion_subgroup(qm.quotient);
  if (!qt.torsion.is_trivial()) {
    const Element& tbar = qt.torsion.rows()[0];
    throw HypothesisFailed("hypothesis-failed: G/central has torsion",
                           "element " + qm.lift(tbar).str() + " has order " +
                               element_order(tbar).get_str() + " in the quotient");
  }

  EmbeddingWitness w;
  w.source = w.target = g;
  w.m = m;

  // bases per the construction: free abelian basis upstairs, SNF basis of the
  // central subgroup downstairs
  AbelianSubgroupStructure qstruct = abelian_structure_of(Subgroup::whole(qm.quotient));
  for (const Int& d : qstruct.invariants)
    if (d != 0) throw Error("torsion-free quotient produced a torsion invariant");
  std::vector<Element> gbasis;
  for (const Element& b : qstruct.basis) gbasis.push_back(qm.lift(b));
  AbelianSubgroupStructure cstruct = abelian_structure_of(central);

  std::vector<Element> gimg, cimg;
  for (const Element& b : gbasis) gimg.push_back(b.pow(m));
  for (const Element& b : cstruct.basis) cimg.push_back(b.pow(m * m));

  for (int i = 0; i < g->ngens(); ++i) {
    IntVec alpha = qstruct.coords(qm.project(g->generator(i)));
    Element head = g->identity(), img = g->identity();
    for (int t = 0; t < alpha.size(); ++t) {
      head = head * gbasis[t].pow(alpha(t));
      img = img * gimg[t].pow(alpha(t));
    }
    Element rho = head.inverse() * g->generator(i);
    IntVec beta = cstruct.coords(rho);  // throws if rho is outside central
    for (int u = 0; u < beta.size(); ++u) img = img * cimg[u].pow(beta(u));
    w.images.push_back(img);
  }

  w.relations = dick_check(g, w.images);

  GradedLieRing l = graded_ring(g, pi);
  InducedEndomorphism endo = induced_endomorphism(l, w.images);
  w.injective = w.relations.homomorphism && endo.kernel_trivial;

  w.image_in = power_subgroup(g, m);
  w.image_contained = true;
  for (const Element& im : w.images)
    w.image_contained = w.image_contained && w.image_in->contains(im);

  // the rewritten-relation chain: with p clearing the central basis into G',
  // each relation and its p-th power must evaluate identically under the map
  std::optional<Int> p;
  {
    Int pmax = 1;
    bool all = true;
    for (const Element& c : cstruct.basis) {
      auto r = pi_power_into(c, derived, pi, Int(10000));
      if (!r.has_value()) {
        all = false;
        break;
      }
      pmax = std::max(pmax, *r);
    }
    if (all) p = pmax;
  }
  if (p.has_value()) {
    bool chain = true;
    for (const auto& rc : w.relations.transcript) chain = chain && rc.ok;
    for (const auto& [pair, word] : g->presentation().comm) {
      Element lhs = commutator(w.images[pair.first], w.images[pair.second]).pow(*p);
      Element rhs = eval_word_images(g, w.images, word).pow(*p);
      chain = chain && lhs == rhs;
    }
    w.notes.push_back(std::string("relation chain at power p = ") + p->get_str() +
                      (chain ? " verified" : " FAILED"));
    if (!chain) w.injective = false;
  } else {
    w.notes.push_back("no pi-power of the central basis lands in G' (pi-isolator of G' is "
                      "larger than the literal definition allows); chain check skipped");
  }
  return w;
}

AbelianStructure abelian_structure(const IntMat& relations, const PrimeSet& pi) {
  SmithResult snf = smith_normal_form(relations.transpose());
  // columns of the input are generators; transpose puts relations into columns
  const int n = static_cast<int>(relations.cols());
  AbelianStructure out;
  out.rank = n - snf.rank;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.d(i, i) > 1) out.invariant_factors.push_back(snf.d(i, i));
  for (const Int& d : out.invariant_factors)
    for (const auto& [prime, e] : factorize(d)) {
      Int q;
      mpz_pow_ui(q.get_mpz_t(), prime.get_mpz_t(), e);
      out.prime_power_factors.push_back(q);
    }
  std::sort(out.prime_power_factors.begin(), out.prime_power_factors.end());
  out.pi_valid = true;
  for (const Int& q : out.prime_power_factors)
    if (pi_decompose(q, pi).pi_part != 1) out.pi_valid = false;

  static const char* superscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::ostringstream os;
  bool lead = false;
  if (out.rank > 0) {
    os << "(Q_π⁺)";
    for (char c : out.rank.get_str()) os << superscripts[c - '0'];
    lead = true;
  }
  for (const Int& q : out.prime_power_factors) {
    if (lead) os << " × ";
    os << "Z/" << q.get_str();
    lead = true;
  }
  if (!lead) os << "1";
  out.completion = os.str();
  return out;
}

bool is_pi_complete_finite(const FiniteGroup& g, const PrimeSet& pi) {
  if (g.size() > 4096) throw TooLarge("is_pi_complete_finite supports |G| <= 4096");
  for (int a = 0; a < g.size(); ++a) {
    long o = g.order_of(a);
    if (o > 1 && is_pi_number(Int(o), pi)) return false;  // pi-torsion
  }
  long e = g.exponent();
  for (long d = 2; d <= e; ++d) {
    if (e % d != 0 || !is_pi_number(Int(d), pi)) continue;
    std::set<int> image;
    for (int a = 0; a < g.size(); ++a) image.insert(g.pow(a, d));
    if (static_cast<int>(image.size()) != g.size()) return false;  // x -> x^d not surjective
  }
  return true;
}

CriterionReport criterion_run(GroupPtr g, const PrimeSet& pi, const std::vector<Int>& ms) {
  CriterionReport rep;
  rep.ms = ms;
  for (const Int& m : ms)
    if (!is_pi_number(m, pi))
      throw InvalidArgument("invalid-argument: " + m.get_str() + " is not a " + pi.str() +
                            "-number");
  if (!is_pi_torsion_free(g, pi))
    throw HypothesisFailed("criterion requires a pi-torsion-free group",
                           pi_torsion_subgroup(g, pi).rows()[0].str());
  bool free_route = g->presentation().relatively_free;
  std::optional<Subgroup> central;
  if (!free_route) {
    if (g->nilpotency_class() > 2)
      throw Unsupported("unsupported-shape: no verifier applies to a class-" +
                        std::to_string(g->nilpotency_class()) + " non-free presentation");
    Subgroup derived = lower_central_series(g)[1];
    Subgroup c1 = pi_isolator(g, derived, pi).isolator;
    try {
      a2_verify(g, pi, ms.empty() ? Int(1) : ms[0], c1);
      central = c1;
      rep.central_note = "central = I_pi(G') (literal definition)";
    } catch (const HypothesisFailed&) {
      Subgroup c2 = pi_isolator(g, derived, PrimeSet::all()).isolator;
      a2_verify(g, pi, ms.empty() ? Int(1) : ms[0], c2);  // throws if this one fails too
      central = c2;
      rep.central_note = "central = I(G') (full isolator; the literal I_pi(G') left torsion "
                         "in the quotient)";
    }
  }
  rep.all_verified = true;
  for (const Int& m : ms) {
    EmbeddingWitness w =
        free_route ? power_endo_verify(g, m, pi) : a2_verify(g, pi, m, *central);
    rep.all_verified = rep.all_verified && w.verified();
    rep.witnesses.push_back(std::move(w));
  }
  rep.statement =
      "each witness is an injective homomorphism G -> G^m with images inside G^m, so G embeds "
      "into (one factor of a power of) every listed verbal subgroup; the quantifier over all "
      "pi-numbers m is sampled, not decided";
  return rep;
}

}  // namespace nilkit
