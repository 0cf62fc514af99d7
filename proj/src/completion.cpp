#include "nilkit/completion.hpp"

#include <random>
#include <sstream>

namespace nilkit {

// ------------------------------------------------------------- root solver

RootSolver::RootSolver(GroupPtr g) : grp_(std::move(g)) {
  if (grp_->nilpotency_class() > 3)
    throw Unsupported("root extraction supports nilpotency class <= 3");
  if (!torsion_subgroup(grp_).torsion.is_trivial())
    throw Unsupported("unsupported-group: root extraction needs a torsion-free group");
  auto lcs = lower_central_series(grp_);
  std::vector<Subgroup> filt;
  filt.push_back(Subgroup::whole(grp_));
  for (size_t i = 1; i < lcs.size(); ++i)
    filt.push_back(pi_isolator(grp_, lcs[i], PrimeSet::all()).isolator);
  for (size_t i = 0; i + 1 < filt.size(); ++i) {
    QuotientMap qm = make_quotient(grp_, filt[i + 1]);
    AbelianSubgroupStructure sec = abelian_structure_of(qm.project_subgroup(filt[i]));
    for (const Int& d : sec.invariants)
      if (d != 0) throw Error("isolated central section has torsion");
    layers_.push_back({filt[i], qm, sec});
  }
}

std::optional<Element> RootSolver::root(const Element& g, const Int& n) const {
  if (g.group() != grp_) throw GroupMismatch("root of an element of a different group");
  if (n < 1) throw InvalidArgument("root degree must be positive");
  if (n == 1) return g;
  Element x = grp_->identity();
  for (const Layer& layer : layers_) {
    Element rho = x.pow(-n) * g;
    if (!layer.filtration_term.contains(rho))
      throw Error("root residual left the filtration term");
    IntVec w = layer.section.coords(layer.mod_next.project(rho));
    IntVec xi = IntVec::Zero(w.size());
    for (int k = 0; k < w.size(); ++k) {
      if (!divides(n, w(k))) return std::nullopt;
      xi(k) = w(k) / n;
    }
    x = x * layer.mod_next.lift(layer.section.from_coords(xi));
  }
  if (x.pow(n) != g) throw Error("root descent produced a non-root");
  return x;
}

std::optional<Element> nth_root(const Element& g, const Int& n) {
  return RootSolver(g.group()).root(g, n);
}

MalReport mal_lemma_check(GroupPtr g, const Int& n, int k, int trials, unsigned long seed) {
  if (k != g->nilpotency_class())
    throw InvalidArgument("k must equal the nilpotency class of G");
  RootSolver solver(g);
  Int nk;
  mpz_pow_ui(nk.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  std::mt19937_64 rng(seed);
  MalReport rep{n, k, trials, 0, false};
  for (int t = 0; t < trials; ++t) {
    Element h = g->identity();
    int factors = 1 + static_cast<int>(rng() % 4);
    for (int f = 0; f < factors; ++f) {
      IntVec v(g->ngens());
      for (int i = 0; i < g->ngens(); ++i) v(i) = static_cast<long>(rng() % 7) - 3;
      h = h * g->element(v).pow(nk);
    }
    auto r = solver.root(h, n);
    if (r.has_value()) {
      if (r->pow(n) != h) throw Error("root verification failed");
      ++rep.roots_found;
    }
  }
  rep.all_found = rep.roots_found == rep.trials;
  return rep;
}

// ------------------------------------------- class <= 2 completion algebra

namespace {

void check_completion_group(const GroupPtr& g) {
  if (!g) throw InvalidArgument("rational element without a group");
  if (g->nilpotency_class() > 2)
    throw Unsupported("completion coordinates support class <= 2 only");
  if (!g->is_torsion_free_presentation())
    throw Unsupported("completion coordinates need a torsion-free presentation");
}

// sum over noncommuting pairs (j, i) of a_j * b_i * [x_j, x_i]
RatVec bilinear_correction(const GroupPtr& g, const RatVec& a, const RatVec& b) {
  RatVec out = RatVec::Zero(g->ngens());
  for (const auto& [pair, w] : g->presentation().comm) {
    if (w.empty()) continue;
    auto [j, i] = pair;
    Rat coeff = a(j) * b(i);
    if (coeff == 0) continue;
    for (const Term& t : w) out(t.gen) += coeff * Rat(t.exp);
  }
  return out;
}

RationalElement rpow_exact(const RationalElement& a, const Rat& q) {
  RatVec c = q * a.coords + (q * (q - 1) / 2) * bilinear_correction(a.grp, a.coords, a.coords);
  return {a.grp, std::move(c)};
}

}  // namespace

bool RationalElement::is_identity() const { return coords.isZero(); }

std::string RationalElement::str() const {
  if (!grp || is_identity()) return "1";
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < coords.size(); ++i) {
    if (coords(i) == 0) continue;
    if (any) os << "*";
    os << grp->presentation().gens[i].name;
    if (is_integral(coords(i)))
      os << "^" << numerator(coords(i)).get_str();
    else
      os << "^(" << coords(i).get_str() << ")";
    any = true;
  }
  return os.str();
}

RationalElement rational_element(GroupPtr g, RatVec coords, const PrimeSet& pi) {
  check_completion_group(g);
  if (coords.size() != g->ngens()) throw InvalidArgument("coordinate vector has wrong length");
  for (int i = 0; i < coords.size(); ++i) qpi_check(coords(i), pi);
  return {std::move(g), std::move(coords)};
}

RationalElement embed_rational(const Element& e) {
  check_completion_group(e.group());
  RatVec c(e.exponents().size());
  for (int i = 0; i < c.size(); ++i) c(i) = Rat(e.exp(i));
  return {e.group(), std::move(c)};
}

std::optional<Element> integral_element(const RationalElement& a) {
  IntVec v(a.coords.size());
  for (int i = 0; i < a.coords.size(); ++i) {
    if (!is_integral(a.coords(i))) return std::nullopt;
    v(i) = numerator(a.coords(i));
  }
  return a.grp->element(v);
}

RationalElement rmul(const RationalElement& a, const RationalElement& b) {
  if (a.grp != b.grp) throw GroupMismatch("rational elements of different groups");
  check_completion_group(a.grp);
  RatVec c = a.coords + b.coords + bilinear_correction(a.grp, a.coords, b.coords);
  return {a.grp, std::move(c)};
}

RationalElement rinv(const RationalElement& a) {
  check_completion_group(a.grp);
  return rpow_exact(a, Rat(-1));
}

RationalElement rpow(const RationalElement& a, const Rat& q, const PrimeSet& pi) {
  check_completion_group(a.grp);
  qpi_check(q, pi);
  return rpow_exact(a, q);
}

RationalElement rcommutator(const RationalElement& a, const RationalElement& b) {
  return rmul(rmul(rinv(a), rinv(b)), rmul(a, b));
}

RationalElement parse_rational_element(const std::string& text, GroupPtr g, const PrimeSet& pi) {
  check_completion_group(g);
  RationalElement out{g, RatVec::Zero(g->ngens())};
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "1") return out;
  size_t pos = 0;
  auto fail = [&](const std::string& m) -> void { throw ParseError(m, 1, static_cast<int>(pos) + 1); };
  while (pos < s.size()) {
    std::string name;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      name += s[pos++];
    int gi = g->presentation().index_of(name);
    if (gi < 0) fail("unknown generator " + name);
    Rat q = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      bool paren = pos < s.size() && s[pos] == '(';
      if (paren) ++pos;
      std::string num;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                s[pos] == '-' || s[pos] == '+' || s[pos] == '/'))
        num += s[pos++];
      if (paren) {
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
      }
      try {
        q = Rat(num);
        q.canonicalize();
      } catch (...) {
        fail("bad exponent " + num);
      }
    }
    qpi_check(q, pi);
    out = rmul(out, rpow_exact(embed_rational(g->generator(gi)), q));
    if (pos < s.size()) {
      if (s[pos] != '*') fail("expected '*'");
      ++pos;
    }
  }
  return out;
}

// --------------------------------------------------------- lemma Li bound

namespace {

int rat_lead(const RatVec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) return i;
  return -1;
}

// positive generator g of Za + Zb together with s, t: s a + t b = g
Rat rat_gcdext(const Rat& a, const Rat& b, Int& s, Int& t) {
  Int m = denominator(a) * denominator(b);
  Int av = numerator(a) * denominator(b);
  Int bv = numerator(b) * denominator(a);
  Int g0 = gcdext(av, bv, s, t);
  return make_rat(g0, m);
}

RationalElement rpow_int(const RationalElement& a, const Int& k) {
  Rat q(k);
  RatVec c = q * a.coords + (q * (q - 1) / 2) * bilinear_correction(a.grp, a.coords, a.coords);
  return {a.grp, std::move(c)};
}

// echelonized sequence of a finitely generated subgroup of the completion
std::map<int, RationalElement> rational_echelon(std::vector<RationalElement> gens) {
  std::map<int, RationalElement> rows;
  std::vector<RationalElement> queue = std::move(gens);
  auto sift = [&](RationalElement h) {
    while (!h.is_identity()) {
      int i = rat_lead(h.coords);
      Rat a = h.coords(i);
      auto it = rows.find(i);
      if (it == rows.end()) {
        if (a < 0) h = rinv(h);
        rows.emplace(i, h);
        return;
      }
      Rat b = it->second.coords(i);
      Rat quo = a / b;
      if (is_integral(quo)) {
        h = rmul(h, rpow_int(it->second, -numerator(quo)));
      } else {
        Int s, t;
        Rat gg = rat_gcdext(b, a, s, t);
        RationalElement nr = rmul(rpow_int(it->second, s), rpow_int(h, t));
        RationalElement old = it->second;
        it->second = nr;
        queue.push_back(old);
        Rat adiv = a / gg;
        h = rmul(h, rpow_int(nr, -numerator(adiv)));
      }
    }
  };
  while (!queue.empty()) {
    RationalElement h = queue.back();
    queue.pop_back();
    sift(h);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<RationalElement> snap;
    for (auto& [l, r] : rows) snap.push_back(r);
    std::vector<RationalElement> cand;
    for (const auto& r : snap) cand.push_back(rinv(r));
    for (const auto& r : snap)
      for (const auto& s : snap) {
        cand.push_back(rmul(r, s));
        cand.push_back(rcommutator(r, s));
      }
    for (auto& c : cand) {
      // quick membership probe: sift a copy against the current rows
      RationalElement h = c;
      bool inside = true;
      while (!h.is_identity()) {
        int i = rat_lead(h.coords);
        auto it = rows.find(i);
        if (it == rows.end()) {
          inside = false;
          break;
        }
        Rat quo = h.coords(i) / it->second.coords(i);
        if (!is_integral(quo)) {
          inside = false;
          break;
        }
        h = rmul(h, rpow_int(it->second, -numerator(quo)));
      }
      if (!inside) {
        queue.push_back(c);
        changed = true;
      }
    }
    while (!queue.empty()) {
      RationalElement h = queue.back();
      queue.pop_back();
      sift(h);
    }
  }
  return rows;
}

IndexValue rational_echelon_index(const std::map<int, RationalElement>& big,
                                  const std::map<int, RationalElement>& small) {
  IndexValue out;
  for (const auto& [lead, row] : big) {
    auto it = small.find(lead);
    if (it == small.end()) {
      out.finite = false;
      return out;
    }
    Rat ratio = it->second.coords(lead) / row.coords(lead);
    if (!is_integral(ratio) || ratio <= 0)
      throw Error("echelon leads are not nested; D is not inside H");
    out.value *= numerator(ratio);
  }
  return out;
}

}  // namespace

LiBoundResult lemma_li_bound(const std::vector<RationalElement>& gens, const PrimeSet& pi) {
  if (gens.empty()) throw InvalidArgument("lemma_li_bound needs at least one generator");
  GroupPtr g = gens[0].grp;
  check_completion_group(g);
  for (const auto& h : gens) {
    if (h.grp != g) throw GroupMismatch("generators from different groups");
    for (int i = 0; i < h.coords.size(); ++i) qpi_check(h.coords(i), pi);
  }
  const int n = g->ngens();
  const int s = static_cast<int>(gens.size());

  std::vector<bool> is_corr(n, false);
  for (const auto& [pair, w] : g->presentation().comm)
    for (const Term& t : w) is_corr[t.gen] = true;

  // linear part: generator coordinates at non-correction positions
  std::vector<RatVec> lambda1;
  for (const auto& h : gens) {
    RatVec v = RatVec::Zero(n);
    for (int i = 0; i < n; ++i)
      if (!is_corr[i]) v(i) = h.coords(i);
    lambda1.push_back(v);
  }
  // central lattice of elements with trivial linear part: commutators plus
  // products over the integer kernel of the linear-part matrix
  std::vector<RatVec> lambda_c;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) lambda_c.push_back(rcommutator(gens[i], gens[j]).coords);
  {
    Int den = 1;
    for (const auto& v : lambda1)
      for (int i = 0; i < n; ++i) den = lcm(den, denominator(v(i)));
    IntMat lmat = IntMat::Zero(n, s);
    for (int c = 0; c < s; ++c)
      for (int i = 0; i < n; ++i)
        lmat(i, c) = numerator(lambda1[c](i)) * (den / denominator(lambda1[c](i)));
    IntMat ker = integer_kernel(lmat);
    for (int c = 0; c < ker.cols(); ++c) {
      RationalElement e{g, RatVec::Zero(n)};
      for (int t = 0; t < s; ++t) e = rmul(e, rpow_int(gens[t], ker(t, c)));
      for (int i = 0; i < n; ++i)
        if (!is_corr[i] && e.coords(i) != 0) throw Error("kernel element has a linear part");
      lambda_c.push_back(e.coords);
    }
  }

  auto ordered_product = [&](const IntVec& nv) {
    RationalElement p{g, RatVec::Zero(n)};
    for (int t = 0; t < s; ++t) p = rmul(p, rpow_int(gens[t], nv(t)));
    return p;
  };
  std::vector<IntVec> probes;
  for (int i = 0; i < s; ++i) {
    IntVec e = IntVec::Zero(s);
    e(i) = 1;
    probes.push_back(e);
    e(i) = 2;
    probes.push_back(e);
  }
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      IntVec e = IntVec::Zero(s);
      e(i) = 1;
      e(j) = 1;
      probes.push_back(e);
    }

  auto try_r = [&](const Int& r) -> std::optional<std::string> {
    Rat rr(r);
    for (const auto& v : lambda1)
      for (int i = 0; i < n; ++i)
        if (!is_integral(rr * v(i)))
          return "generator lattice: coordinate " + std::to_string(i) + " gives " +
                 Rat(rr * v(i)).get_str();
    for (const auto& v : lambda_c)
      for (int i = 0; i < n; ++i)
        if (!is_integral(rr * v(i)))
          return "central lattice: coordinate " + std::to_string(i) + " gives " +
                 Rat(rr * v(i)).get_str();
    for (const auto& nv : probes) {
      RationalElement p = rpow_int(ordered_product(nv), r);
      for (int i = 0; i < n; ++i)
        if (is_corr[i] && !is_integral(p.coords(i)))
          return "power of a probe product has commutator coordinate " +
                 p.coords(i).get_str();
    }
    return std::nullopt;
  };

  LiBoundResult out;
  PiNumberStream stream(pi, Int(max_enum()));
  bool found = false;
  while (auto r = stream.next()) {
    auto failure = try_r(*r);
    if (!failure.has_value()) {
      out.r = *r;
      found = true;
      break;
    }
    out.rejected.push_back({*r, *failure});
  }
  if (!found) throw TooLarge("no pi-number r below the bound clears the denominators");

  // subnormal-chain bound: |H : D| with D generated by the smallest integral
  // pi-powers of the generators (D normalizes into H through D*[H,H])
  std::vector<RationalElement> dgens;
  for (const auto& h : gens) {
    PiNumberStream ts(pi, Int(max_enum()));
    bool ok = false;
    while (auto t = ts.next()) {
      if (integral_element(rpow_int(h, *t)).has_value()) {
        out.generator_powers.push_back(*t);
        dgens.push_back(rpow_int(h, *t));
        ok = true;
        break;
      }
    }
    if (!ok) throw TooLarge("generator has no integral pi-power below the bound");
  }
  out.proof_bound =
      rational_echelon_index(rational_echelon(gens), rational_echelon(dgens));
  return out;
}

}  // namespace nilkit
