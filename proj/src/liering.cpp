#include "nilkit/liering.hpp"

namespace nilkit {

std::vector<Subgroup> isolator_filtration(GroupPtr g, const PrimeSet& pi) {
  auto lcs = lower_central_series(g);
  std::vector<Subgroup> filt;
  filt.push_back(Subgroup::whole(g));
  for (size_t i = 1; i + 1 < lcs.size(); ++i)
    filt.push_back(pi_isolator(g, lcs[i], pi).isolator);
  filt.push_back(Subgroup::trivial(g));
  for (size_t i = 0; i + 1 < filt.size(); ++i)
    if (!filt[i + 1].subset_of(filt[i])) throw Error("isolator filtration is not descending");
  return filt;
}

bool check_central_filtration(GroupPtr g, const std::vector<Subgroup>& filtration) {
  const int len = static_cast<int>(filtration.size());
  Subgroup triv = Subgroup::trivial(g);
  auto term = [&](int i) -> const Subgroup& { return i - 1 < len ? filtration[i - 1] : triv; };
  for (int i = 1; i <= len; ++i)
    for (int j = 1; j <= len; ++j)
      for (const Element& a : term(i).rows())
        for (const Element& b : term(j).rows())
          if (!term(i + j).contains(commutator(a, b))) return false;
  return true;
}

IntVec LieComponent::coords_of(const Element& v) const {
  return section.coords(mod_next.project(v));
}

IntVec GradedLieRing::bracket(int deg_i, int a, int deg_j, int b) const {
  if (deg_i + deg_j > max_degree())
    return IntVec::Zero(0);
  return brackets.at(std::make_tuple(deg_i, a, deg_j, b));
}

GradedLieRing graded_ring(GroupPtr g, const PrimeSet& pi) {
  GradedLieRing l{g, pi, isolator_filtration(g, pi), {}, {}, {}};
  if (!check_central_filtration(g, l.filtration))
    throw InvalidArgument("filtration-not-central: the isolator filtration of this group "
                          "is not central for pi = " + pi.str());
  const int top = static_cast<int>(l.filtration.size()) - 1;
  for (int i = 0; i < top; ++i) {
    QuotientMap qm = make_quotient(g, l.filtration[i + 1]);
    AbelianSubgroupStructure sec = abelian_structure_of(qm.project_subgroup(l.filtration[i]));
    LieComponent comp{i + 1, sec.invariants, {}, sec, qm};
    for (const Element& b : sec.basis) comp.basis.push_back(qm.lift(b));
    for (const Int& d : comp.invariants) {
      if (d == 0) continue;
      if (pi_decompose(d, pi).pi_part != 1)
        l.warnings.push_back("component of degree " + std::to_string(i + 1) +
                             " has pi-torsion (invariant factor " + d.get_str() + ")");
    }
    l.components.push_back(std::move(comp));
  }
  for (int i = 1; i <= l.max_degree(); ++i)
    for (int j = 1; j <= l.max_degree(); ++j) {
      const LieComponent& ci = l.component(i);
      const LieComponent& cj = l.component(j);
      for (int a = 0; a < ci.dim(); ++a)
        for (int b = 0; b < cj.dim(); ++b) {
          Element com = commutator(ci.basis[a], cj.basis[b]);
          if (i + j > l.max_degree()) {
            if (!com.is_identity())
              throw Error("bracket of degrees " + std::to_string(i) + "," + std::to_string(j) +
                          " leaves the filtration");
            continue;
          }
          l.brackets[{i, a, j, b}] = l.component(i + j).coords_of(com);
        }
    }
  return l;
}

Element apply_generator_map(const std::vector<Element>& images, const Element& e) {
  if (static_cast<int>(images.size()) != e.group()->ngens())
    throw InvalidArgument("generator map must cover every generator");
  Element out = images[0].group()->identity();
  for (int i = 0; i < e.group()->ngens(); ++i)
    if (e.exp(i) != 0) out = out * images[i].pow(e.exp(i));
  return out;
}

std::vector<Element> power_map_images(const GroupPtr& g, const Int& m) {
  std::vector<Element> images;
  for (int i = 0; i < g->ngens(); ++i) {
    const auto& def = g->presentation().gens[i].definition;
    if (!def.has_value()) {
      images.push_back(g->generator(i).pow(m));
      continue;
    }
    if (def->hi >= i || def->lo >= i)
      throw InvalidArgument("generator definition must reference earlier generators");
    images.push_back(commutator(images[def->hi], images[def->lo]).pow(def->sign));
  }
  return images;
}

namespace {

// kernel of the induced endomorphism on Z^k / <d_t e_t> trivial?
bool section_endo_kernel_trivial(const IntMat& m, const std::vector<Int>& invariants) {
  const int k = static_cast<int>(invariants.size());
  int torsion = 0;
  for (const Int& d : invariants)
    if (d != 0) ++torsion;
  IntMat block(k, k + torsion);
  block.leftCols(k) = m;
  int c = k;
  for (int t = 0; t < k; ++t) {
    if (invariants[t] == 0) continue;
    IntVec col = IntVec::Zero(k);
    col(t) = -invariants[t];
    block.col(c++) = col;
  }
  IntMat ker = integer_kernel(block);
  for (int col = 0; col < ker.cols(); ++col)
    for (int t = 0; t < k; ++t) {
      const Int& v = ker(t, col);
      if (invariants[t] == 0 ? v != 0 : !divides(invariants[t], v)) return false;
    }
  return true;
}

}  // namespace

InducedEndomorphism induced_endomorphism(const GradedLieRing& l,
                                         const std::vector<Element>& images) {
  const GroupPtr& g = l.grp;
  if (static_cast<int>(images.size()) != g->ngens())
    throw InvalidArgument("invalid-endomorphism: need an image for every generator");
  for (const Element& im : images)
    if (im.group() != g) throw GroupMismatch("images must live in the same group");
  for (size_t i = 0; i + 1 < l.filtration.size(); ++i)
    for (const Element& r : l.filtration[i].rows())
      if (!l.filtration[i].contains(apply_generator_map(images, r)))
        throw InvalidArgument("invalid-endomorphism: images do not preserve G_" +
                              std::to_string(i + 1));
  InducedEndomorphism out;
  for (int deg = 1; deg <= l.max_degree(); ++deg) {
    const LieComponent& comp = l.component(deg);
    IntMat m(comp.dim(), comp.dim());
    for (int b = 0; b < comp.dim(); ++b)
      m.col(b) = comp.coords_of(apply_generator_map(images, comp.basis[b]));
    bool triv = section_endo_kernel_trivial(m, comp.invariants);
    out.matrices.push_back(std::move(m));
    out.degree_kernel_trivial.push_back(triv);
    out.kernel_trivial = out.kernel_trivial && triv;
  }
  return out;
}

}  // namespace nilkit
