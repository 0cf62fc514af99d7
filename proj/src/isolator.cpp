#include "nilkit/isolator.hpp"

#include <set>

namespace nilkit {

Int element_order(const Element& g, const Int& bound) {
  if (g.is_identity()) return 1;
  Element h = g;
  Int k = 1;
  while (k <= bound) {
    if (h.is_identity()) return k;
    h = h * g;
    k += 1;
  }
  throw TooLarge("element order exceeds the search bound " + bound.get_str());
}

std::vector<Element> enumerate_subgroup(const Subgroup& s) {
  const GroupPtr& g = s.group();
  Int size = 1;
  for (const Element& r : s.rows()) {
    const Int& o = g->order_of(r.lead());
    if (o == 0) throw TooLarge("subgroup is infinite");
    size *= o / r.exp(r.lead());
  }
  if (size > max_enum()) throw TooLarge("subgroup size exceeds NILKIT_MAX_ENUM");
  std::vector<Element> out{g->identity()};
  std::set<Element> seen(out.begin(), out.end());
  for (size_t head = 0; head < out.size(); ++head)
    for (const Element& r : s.rows()) {
      Element e = out[head] * r;
      if (seen.insert(e).second) out.push_back(e);
    }
  if (Int(static_cast<long>(out.size())) != size)
    throw Error("subgroup enumeration disagrees with the echelon size");
  return out;
}

namespace {

IntMat unimodular_inverse(const IntMat& u) {
  SmithResult s = smith_normal_form(u);
  for (int i = 0; i < u.rows(); ++i)
    if (s.d(i, i) != 1) throw Error("matrix is not unimodular");
  return s.v * s.u;
}

// row-exponent vector of s over the echelon rows of the abelian subgroup
IntVec row_coords(const Subgroup& sub, const Element& s) {
  auto w = sub.membership(s);
  if (!w.has_value()) throw InvalidArgument("element is outside the subgroup");
  IntVec x = IntVec::Zero(static_cast<int>(sub.rows().size()));
  for (const auto& [ri, q] : w->factors) x(ri) += q;
  return x;
}

}  // namespace

AbelianSubgroupStructure abelian_structure_of(const Subgroup& s) {
  const GroupPtr& g = s.group();
  const int p = static_cast<int>(s.rows().size());
  for (const Element& a : s.rows())
    for (const Element& b : s.rows())
      if (!commutator(a, b).is_identity())
        throw InvalidArgument("abelian_structure_of on a nonabelian subgroup");
  // relation lattice: torsion leads force (o/e) * row = deeper combination
  std::vector<IntVec> rels;
  for (int j = 0; j < p; ++j) {
    const Element& r = s.rows()[j];
    const Int& o = g->order_of(r.lead());
    if (o == 0) continue;
    Int m = o / r.exp(r.lead());
    IntVec rel = IntVec::Zero(p);
    rel(j) = m;
    rel -= row_coords(s, r.pow(m));
    rels.push_back(rel);
  }
  IntMat a = IntMat::Zero(p, static_cast<int>(rels.size()));
  for (size_t c = 0; c < rels.size(); ++c) a.col(static_cast<int>(c)) = rels[c];
  SmithResult snf = smith_normal_form(a);
  AbelianSubgroupStructure out{s, {}, {}, snf.u, unimodular_inverse(snf.u), {}};
  for (int k = 0; k < p; ++k) {
    Int d = k < snf.rank ? snf.d(k, k) : Int(0);
    if (d == 1) continue;  // trivial factor
    out.kept.push_back(k);
    out.invariants.push_back(d);
    Element b = g->identity();
    for (int t = 0; t < p; ++t) b = b * s.rows()[t].pow(out.uinv(t, k));
    out.basis.push_back(b);
  }
  return out;
}

IntVec AbelianSubgroupStructure::coords(const Element& s) const {
  IntVec x = row_coords(sub, s);
  IntVec yfull = u * x;
  IntVec y = IntVec::Zero(static_cast<int>(kept.size()));
  for (size_t k = 0; k < kept.size(); ++k) {
    y(static_cast<int>(k)) = yfull(kept[k]);
    if (invariants[k] != 0) {
      y(static_cast<int>(k)) %= invariants[k];
      if (y(static_cast<int>(k)) < 0) y(static_cast<int>(k)) += invariants[k];
    }
  }
  return y;
}

Element AbelianSubgroupStructure::from_coords(const IntVec& y) const {
  Element out = sub.group()->identity();
  for (size_t k = 0; k < kept.size(); ++k) out = out * basis[k].pow(y(static_cast<int>(k)));
  return out;
}

namespace {

// torsion of an abelian pc group straight from its power relations
Subgroup abelian_torsion(const GroupPtr& g) {
  const int n = g->ngens();
  std::vector<IntVec> rels;
  for (int i = 0; i < n; ++i) {
    if (g->order_of(i) == 0) continue;
    IntVec rel = IntVec::Zero(n);
    rel(i) = g->order_of(i);
    rel -= g->collect(g->presentation().gens[i].power_tail).exponents();
    rels.push_back(rel);
  }
  IntMat a = IntMat::Zero(n, static_cast<int>(rels.size()));
  for (size_t c = 0; c < rels.size(); ++c) a.col(static_cast<int>(c)) = rels[c];
  SmithResult snf = smith_normal_form(a);
  IntMat uinv = unimodular_inverse(snf.u);
  std::vector<Element> gens;
  for (int k = 0; k < snf.rank; ++k)
    if (snf.d(k, k) > 1) gens.push_back(g->element(uinv.col(k)));
  return Subgroup::generated(g, std::move(gens));
}

Subgroup torsion_impl(const GroupPtr& g) {
  auto lcs = lower_central_series(g);
  if (lcs.size() <= 2) return abelian_torsion(g);
  const Subgroup& central = lcs[lcs.size() - 2];
  QuotientMap qm = make_quotient(g, central);
  Subgroup tq = torsion_impl(qm.quotient);

  AbelianSubgroupStructure cs = abelian_structure_of(central);
  std::vector<Element> torsion_gens;
  for (size_t k = 0; k < cs.invariants.size(); ++k)
    if (cs.invariants[k] != 0) torsion_gens.push_back(cs.basis[k]);
  Subgroup tau_c = Subgroup::generated(g, torsion_gens);

  Int exp_tq = 1;
  for (const Element& t : enumerate_subgroup(tq)) exp_tq = lcm(exp_tq, element_order(t));

  std::vector<Element> gens = tau_c.rows();
  for (const Element& tbar : enumerate_subgroup(tq)) {
    Element r = qm.lift(tbar);
    // want c in central with (r c)^N = r^N c^N in tau_c
    Element target = r.pow(-exp_tq);
    IntVec w = cs.coords(target);
    IntVec xi = IntVec::Zero(w.size());
    bool solvable = true;
    for (int k = 0; k < w.size() && solvable; ++k) {
      if (cs.invariants[k] != 0) continue;  // torsion coordinate, absorbed by tau_c
      if (!divides(exp_tq, w(k)))
        solvable = false;
      else
        xi(k) = w(k) / exp_tq;
    }
    if (!solvable) continue;
    Element cand = r * cs.from_coords(xi);
    if (!tau_c.contains(cand.pow(exp_tq)))
      throw Error("torsion candidate fails its defining congruence");
    gens.push_back(cand);
  }
  return Subgroup::generated(g, std::move(gens));
}

}  // namespace

TorsionReport torsion_subgroup(GroupPtr g, const PrimeSet& pi) {
  Subgroup tor = torsion_impl(g);
  TorsionReport rep{tor, {}, Subgroup::trivial(g)};
  std::vector<Element> pi_gens;
  for (const Element& t : enumerate_subgroup(tor)) {
    Int o = element_order(t);
    rep.element_orders.push_back({t, o});
    if (o > 1 && is_pi_number(o, pi)) pi_gens.push_back(t);
  }
  rep.pi_part = Subgroup::generated(g, std::move(pi_gens));
  return rep;
}

Subgroup pi_torsion_subgroup(GroupPtr g, const PrimeSet& pi) {
  return torsion_subgroup(std::move(g), pi).pi_part;
}

bool is_pi_torsion_free(GroupPtr g, const PrimeSet& pi) {
  return pi_torsion_subgroup(std::move(g), pi).is_trivial();
}

IsolatorResult pi_isolator(GroupPtr g, const Subgroup& h, const PrimeSet& pi) {
  if (h.group() != g) throw GroupMismatch("isolator of a subgroup of a different group");
  if (!h.is_normal()) throw Unsupported("isolators are implemented for normal subgroups only");
  QuotientMap qm = make_quotient(g, h);
  Subgroup pit = pi_torsion_subgroup(qm.quotient, pi);
  std::vector<Element> gens = h.rows();
  for (const Element& t : pit.rows()) gens.push_back(qm.lift(t));
  Subgroup iso = Subgroup::generated(g, std::move(gens), /*normal=*/true);
  IsolatorResult out{iso, {}};
  for (const Element& r : iso.rows()) {
    Int n = element_order(qm.project(r));
    if (!is_pi_number(n, pi) || !h.contains(r.pow(n)))
      throw Error("isolator certificate failed for row " + r.str());
    out.certificates.push_back({r, n});
  }
  return out;
}

}  // namespace nilkit
