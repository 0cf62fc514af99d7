#include "nilkit/subgroup.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace nilkit {

namespace {

// working echelon during construction: lead index -> row
using RowMap = std::map<int, Element>;

// sift h through the echelon, inserting or combining as needed;
// newly spawned elements (power overflows, displaced rows) go to the queue
void sift_insert(const GroupPtr& g, RowMap& rows, std::vector<Element>& queue, Element h) {
  while (!h.is_identity()) {
    int i = h.lead();
    Int a = h.exp(i);
    const Int& o = g->order_of(i);
    auto it = rows.find(i);
    if (it == rows.end()) {
      if (o != 0) {
        Int s, t;
        Int gg = gcdext(a, o, s, t);
        Element r = gg == a ? h : h.pow(s);
        rows.emplace(i, r);
        if (gg != o) queue.push_back(r.pow(o / gg));
        h = h * r.pow(-(a / gg));
      } else {
        if (a < 0) h = h.inverse();
        rows.emplace(i, h);
        return;
      }
    } else {
      Element r = it->second;
      Int b = r.exp(i);
      if (divides(b, a)) {
        h = h * r.pow(-(a / b));
      } else {
        Int s, t;
        Int gg = gcdext(b, a, s, t);
        Element nr = r.pow(s) * h.pow(t);
        it->second = nr;
        queue.push_back(r);
        if (o != 0 && gg != o) queue.push_back(nr.pow(o / gg));
        h = h * nr.pow(-(a / gg));
      }
    }
  }
}

void drain_queue(const GroupPtr& g, RowMap& rows, std::vector<Element>& queue) {
  while (!queue.empty()) {
    Element h = queue.back();
    queue.pop_back();
    sift_insert(g, rows, queue, std::move(h));
  }
}

bool sifts_to_identity(const RowMap& rows, Element h) {
  while (!h.is_identity()) {
    int i = h.lead();
    auto it = rows.find(i);
    if (it == rows.end()) return false;
    const Int& b = it->second.exp(i);
    if (!divides(b, h.exp(i))) return false;
    h = h * it->second.pow(-(h.exp(i) / b));
  }
  return true;
}

}  // namespace

Subgroup Subgroup::generated(GroupPtr g, std::vector<Element> gens, bool normal) {
  for (const Element& e : gens)
    if (e.group() != g) throw GroupMismatch("subgroup generator from a different group");
  RowMap rows;
  std::vector<Element> queue(gens.begin(), gens.end());
  drain_queue(g, rows, queue);

  // closure sweeps: the sequence is induced once inverses, pairwise products,
  // conjugates (and ambient conjugates, when a normal closure is requested)
  // all sift to the identity
  const int n = g->ngens();
  bool changed = true;
  while (changed) {
    std::vector<Element> snapshot;
    for (auto& [lead, r] : rows) snapshot.push_back(r);
    std::vector<Element> cand;
    for (const Element& r : snapshot) cand.push_back(r.inverse());
    for (const Element& r : snapshot)
      for (const Element& s : snapshot) {
        cand.push_back(r * s);
        cand.push_back(r.conj(s));
        cand.push_back(r.conj(s.inverse()));
      }
    if (normal)
      for (const Element& r : snapshot)
        for (int i = 0; i < n; ++i) {
          cand.push_back(r.conj(g->generator(i)));
          cand.push_back(r.conj(g->generator(i).pow(-1)));
        }
    for (Element& c : cand)
      if (!sifts_to_identity(rows, c)) queue.push_back(std::move(c));
    if (queue.empty()) {
      changed = false;
    } else {
      drain_queue(g, rows, queue);
    }
  }

  // canonical reduction: entries at deeper lead positions into [0, lead exp)
  std::vector<Element> out;
  for (auto& [lead, r] : rows) out.push_back(r);
  for (size_t ri = 0; ri + 1 < out.size(); ++ri)
    for (size_t si = ri + 1; si < out.size(); ++si) {
      int l = out[si].lead();
      Int q = fdiv(out[ri].exp(l), out[si].exp(l));
      if (q != 0) out[ri] = out[ri] * out[si].pow(-q);
    }
  return Subgroup(std::move(g), std::move(out));
}

Subgroup Subgroup::whole(GroupPtr g) {
  std::vector<Element> gens;
  for (int i = 0; i < g->ngens(); ++i) gens.push_back(g->generator(i));
  return generated(std::move(g), std::move(gens));
}

Subgroup Subgroup::trivial(GroupPtr g) { return Subgroup(std::move(g), {}); }

std::optional<Subgroup::Witness> Subgroup::membership(const Element& g) const {
  if (g.group() != grp_) throw GroupMismatch("membership test across groups");
  Witness w;
  Element h = g;
  while (!h.is_identity()) {
    int i = h.lead();
    int ri = -1;
    for (size_t k = 0; k < rows_.size(); ++k)
      if (rows_[k].lead() == i) {
        ri = static_cast<int>(k);
        break;
      }
    if (ri < 0) return std::nullopt;
    const Int& b = rows_[ri].exp(i);
    if (!divides(b, h.exp(i))) return std::nullopt;
    Int q = h.exp(i) / b;
    h = h * rows_[ri].pow(-q);
    w.factors.push_back({ri, q});
  }
  std::reverse(w.factors.begin(), w.factors.end());
  return w;
}

Element Subgroup::Witness::evaluate(const Subgroup& h) const {
  Element out = h.group()->identity();
  for (const auto& [ri, q] : factors) out = out * h.rows()[ri].pow(q);
  return out;
}

bool Subgroup::contains(const Element& g) const { return membership(g).has_value(); }

bool Subgroup::subset_of(const Subgroup& other) const {
  for (const Element& r : rows_)
    if (!other.contains(r)) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (const Element& r : rows_)
    for (int i = 0; i < grp_->ngens(); ++i) {
      if (!contains(r.conj(grp_->generator(i)))) return false;
      if (!contains(r.conj(grp_->generator(i).pow(-1)))) return false;
    }
  return true;
}

Element Subgroup::reduce_mod(const Element& g) const {
  if (g.group() != grp_) throw GroupMismatch("coset reduction across groups");
  Element h = g;
  for (const Element& r : rows_) {
    int l = r.lead();
    Int q = fdiv(h.exp(l), r.exp(l));
    if (q != 0) h = h * r.pow(-q);
  }
  return h;
}

std::string Subgroup::str() const {
  if (rows_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << ", ";
    os << rows_[i].str();
  }
  return os.str();
}

IndexValue subgroup_index(const Subgroup& k, const Subgroup& h) {
  if (k.group() != h.group()) throw GroupMismatch("index across groups");
  if (!h.subset_of(k)) throw InvalidArgument("index requires H <= K");
  const GroupPtr& g = k.group();
  auto eff = [&](const Subgroup& s, int i) -> std::optional<Int> {
    for (const Element& r : s.rows())
      if (r.lead() == i) return r.exp(i);
    if (g->order_of(i) != 0) return g->order_of(i);
    return std::nullopt;  // infinite level, no row
  };
  IndexValue out;
  for (int i = 0; i < g->ngens(); ++i) {
    auto eh = eff(h, i), ek = eff(k, i);
    if (!ek.has_value()) continue;  // K misses the level, so does H
    if (!eh.has_value()) {
      out.finite = false;
      return out;
    }
    if (!divides(*ek, *eh)) throw Error("echelon index mismatch; H is not inside K");
    out.value *= *eh / *ek;
  }
  return out;
}

Subgroup normal_closure(GroupPtr g, const std::vector<Element>& gens) {
  return Subgroup::generated(std::move(g), gens, /*normal=*/true);
}

std::vector<Subgroup> lower_central_series(GroupPtr g) {
  std::vector<Subgroup> out;
  out.push_back(Subgroup::whole(g));
  while (!out.back().is_trivial()) {
    std::vector<Element> comms;
    for (const Element& r : out.back().rows())
      for (int i = 0; i < g->ngens(); ++i) comms.push_back(commutator(r, g->generator(i)));
    Subgroup next = normal_closure(g, comms);
    if (static_cast<int>(out.size()) > g->nilpotency_class() + 1)
      throw Error("lower central series did not stabilize within the nilpotency class");
    out.push_back(std::move(next));
  }
  return out;
}

bool has_finite_index(GroupPtr g, const Subgroup& n) {
  for (int i = 0; i < g->ngens(); ++i) {
    if (g->order_of(i) != 0) continue;
    bool covered = false;
    for (const Element& r : n.rows())
      if (r.lead() == i) covered = true;
    if (!covered) return false;
  }
  return true;
}

std::vector<Element> enumerate_cosets(GroupPtr g, const Subgroup& n) {
  if (!has_finite_index(g, n)) throw TooLarge("coset space is infinite");
  IndexValue expected = subgroup_index(Subgroup::whole(g), n);
  if (!expected.finite || expected.value > max_enum())
    throw TooLarge("coset space exceeds NILKIT_MAX_ENUM");
  std::vector<Element> reps;
  std::set<Element> seen;
  Element id = n.reduce_mod(g->identity());
  reps.push_back(id);
  seen.insert(id);
  for (size_t head = 0; head < reps.size(); ++head) {
    for (int i = 0; i < g->ngens(); ++i) {
      Element r = n.reduce_mod(reps[head] * g->generator(i));
      if (seen.insert(r).second) reps.push_back(r);
    }
  }
  if (Int(static_cast<long>(reps.size())) != expected.value)
    throw Error("coset enumeration disagrees with the echelon index");
  return reps;
}

Subgroup power_subgroup(GroupPtr g, const Int& m) {
  if (m < 1) throw InvalidArgument("power subgroup needs m >= 1");
  std::vector<Element> mth;
  for (int i = 0; i < g->ngens(); ++i) mth.push_back(g->generator(i).pow(m));
  Subgroup ncl = normal_closure(g, mth);
  if (!has_finite_index(g, ncl))
    throw Error("G/N is not finite; cannot occur for a finitely generated nilpotent group");
  std::vector<Element> gens = ncl.rows();
  for (const Element& rep : enumerate_cosets(g, ncl)) gens.push_back(rep.pow(m));
  return Subgroup::generated(g, std::move(gens), /*normal=*/true);
}

// ------------------------------------------------------------- quotients

QuotientMap make_quotient(GroupPtr g, const Subgroup& n) {
  NilpotentPresentation p = g->presentation();
  p.name = p.name + "_q";
  for (const Element& r : n.rows()) {
    int l = r.lead();
    GeneratorDecl& gd = p.gens[l];
    gd.order = r.exp(l);
    Word tail;
    for (int k = g->ngens() - 1; k > l; --k)
      if (r.exp(k) != 0) tail.push_back({k, -r.exp(k)});
    gd.power_tail = std::move(tail);
  }
  GroupPtr q;
  try {
    q = Group::create(std::move(p));
  } catch (const InvalidArgument& e) {
    throw Error(std::string("quotient presentation inconsistent (is N normal?): ") + e.what());
  }
  return QuotientMap{g, q, n};
}

Element QuotientMap::project(const Element& g) const {
  if (g.group() != source) throw GroupMismatch("projecting an element of a different group");
  return quotient->element(g.exponents());
}

Element QuotientMap::lift(const Element& q) const {
  if (q.group() != quotient) throw GroupMismatch("lifting an element of a different group");
  return source->element(q.exponents());
}

Subgroup QuotientMap::project_subgroup(const Subgroup& h) const {
  std::vector<Element> gens;
  for (const Element& r : h.rows()) gens.push_back(project(r));
  return Subgroup::generated(quotient, std::move(gens));
}

Subgroup QuotientMap::preimage(const Subgroup& hbar) const {
  std::vector<Element> gens = kernel.rows();
  for (const Element& r : hbar.rows()) gens.push_back(lift(r));
  return Subgroup::generated(source, std::move(gens));
}

// ------------------------------------------------------------- lemma Rob

std::optional<Int> pi_power_into(const Element& g, const Subgroup& h, const PrimeSet& pi,
                                 const Int& bound) {
  PiNumberStream stream(pi, bound);
  while (auto r = stream.next()) {
    if (h.contains(g.pow(*r))) return *r;
  }
  return std::nullopt;
}

LemmaRobReport lemma_rob_check(GroupPtr g, const Subgroup& h, const PrimeSet& pi, int n_samples,
                               unsigned long seed) {
  LemmaRobReport rep;
  Int bound = max_enum();
  for (int i = 0; i < g->ngens(); ++i) {
    auto r = pi_power_into(g->generator(i), h, pi, bound);
    if (!r.has_value())
      throw HypothesisFailed("precondition-failed: generator " +
                                 g->presentation().gens[i].name + " has no positive " +
                                 pi.str() + "-power in H within the search bound",
                             g->presentation().gens[i].name);
    rep.generator_powers.push_back({i, *r});
  }
  rep.index = subgroup_index(Subgroup::whole(g), h);
  rep.index_is_pi_number = rep.index.finite && is_pi_number(rep.index.value, pi);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    IntVec v(g->ngens());
    for (int i = 0; i < g->ngens(); ++i) v(i) = static_cast<long>(rng() % 9) - 4;
    Element e = g->element(v);
    auto r = pi_power_into(e, h, pi, bound);
    if (!r.has_value())
      throw HypothesisFailed("sampled element without a pi-power in H (soundness bug)", e.str());
    rep.samples.push_back({e, *r});
  }
  rep.ok = rep.index.finite && rep.index_is_pi_number;
  return rep;
}

}  // namespace nilkit
