#include "nilkit/pcgroup.hpp"

#include <sstream>

namespace nilkit {

namespace {
constexpr long kCollectGuard = 50000000L;  // rewriting step cap; trips on garbage input
}

// ------------------------------------------------------------------ Element

int Element::lead() const {
  for (int i = 0; i < exp_.size(); ++i)
    if (exp_(i) != 0) return i;
  return -1;
}

bool Element::operator==(const Element& o) const {
  if (!grp_ || !o.grp_) return !grp_ && !o.grp_;
  return grp_ == o.grp_ && exp_ == o.exp_;
}

bool Element::operator<(const Element& o) const {
  if (grp_ != o.grp_) throw GroupMismatch("comparing elements of different groups");
  for (int i = 0; i < exp_.size(); ++i)
    if (exp_(i) != o.exp_(i)) return exp_(i) < o.exp_(i);
  return false;
}

std::string Element::str() const {
  if (!grp_ || is_identity()) return "1";
  const auto& p = grp_->presentation();
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < exp_.size(); ++i) {
    if (exp_(i) == 0) continue;
    if (any) os << "*";
    os << p.gens[i].name << "^" << exp_(i).get_str();
    any = true;
  }
  return os.str();
}

// -------------------------------------------------------------------- Group

Group::Group(NilpotentPresentation p) : pres_(std::move(p)), n_(pres_.ngens()) {}

GroupPtr Group::create_unchecked(NilpotentPresentation p) {
  p.validate();
  auto g = std::shared_ptr<Group>(new Group(std::move(p)));
  g->precompute();
  return g;
}

GroupPtr Group::create(NilpotentPresentation p) {
  GroupPtr g = create_unchecked(std::move(p));
  ConsistencyReport rep = g->check_overlaps();
  if (!rep.consistent)
    throw InvalidArgument("inconsistent presentation: " + rep.detail);
  return g;
}

bool Group::is_torsion_free_presentation() const {
  for (int i = 0; i < n_; ++i)
    if (order_of(i) != 0) return false;
  return true;
}

void Group::precompute() {
  commute_.assign(n_, std::vector<bool>(n_, true));
  chunk_.assign(n_, std::vector<bool>(n_, true));
  central_.assign(n_, true);
  tail_central_.assign(n_, true);
  for (const auto& [pair, w] : pres_.comm) {
    if (w.empty()) continue;
    auto [j, i] = pair;
    commute_[j][i] = false;
    central_[j] = central_[i] = false;
  }
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i) {
      if (commute_[j][i]) continue;
      for (const Term& t : *pres_.commutator_word(j, i))
        if (!central_[t.gen]) chunk_[j][i] = false;
    }
  for (int i = 0; i < n_; ++i)
    for (const Term& t : pres_.gens[i].power_tail)
      if (!central_[t.gen]) tail_central_[i] = false;
  // freeze all commutator variants now; collection afterwards is read-only.
  // Descending on the lower index (then the higher) so every variant a
  // collection can touch is already in the table when it is needed.
  for (int i = n_ - 1; i >= 0; --i)
    for (int j = n_ - 1; j > i; --j) {
      if (commute_[j][i]) continue;
      for (int sj : {1, -1})
        for (int si : {1, -1}) comm_variant(j, i, sj, si);
    }
}

const IntVec& Group::comm_variant(int j, int i, int sj, int si) {
  auto key = std::make_tuple(j, i, sj, si);
  auto it = variants_.find(key);
  if (it != variants_.end()) return it->second;
  IntVec nf;
  if (sj == 1 && si == 1) {
    nf = collect_vec(*pres_.commutator_word(j, i));
  } else if (sj == -1 && si == 1) {
    // [b^-1, a] = b [b,a]^-1 b^-1
    const IntVec& w = comm_variant(j, i, 1, 1);
    Word word{{j, 1}};
    for (int k = n_ - 1; k >= 0; --k)
      if (w(k) != 0) word.push_back({k, -w(k)});
    word.push_back({j, -1});
    nf = collect_vec(word);
  } else if (sj == 1 && si == -1) {
    // [b, a^-1] = a [b,a]^-1 a^-1
    const IntVec& w = comm_variant(j, i, 1, 1);
    Word word{{i, 1}};
    for (int k = n_ - 1; k >= 0; --k)
      if (w(k) != 0) word.push_back({k, -w(k)});
    word.push_back({i, -1});
    nf = collect_vec(word);
  } else {
    // [b^-1, a^-1] = b [b,a^-1]^-1 b^-1
    const IntVec& w = comm_variant(j, i, 1, -1);
    Word word{{j, 1}};
    for (int k = n_ - 1; k >= 0; --k)
      if (w(k) != 0) word.push_back({k, -w(k)});
    word.push_back({j, -1});
    nf = collect_vec(word);
  }
  return variants_.emplace(key, std::move(nf)).first->second;
}

IntVec Group::collect_vec(const Word& w) const {
  IntVec nf = IntVec::Zero(n_);
  std::vector<Term> pending(w.rbegin(), w.rend());
  drain(nf, pending);
  return nf;
}

void Group::drain(IntVec& nf, std::vector<Term>& pending) const {
  long steps = 0;
  while (!pending.empty()) {
    if (++steps > kCollectGuard)
      throw Error("collection exceeded the step cap; presentation is likely inconsistent");
    Term t = pending.back();
    pending.pop_back();
    if (t.exp == 0) continue;
    absorb(nf, t.gen, t.exp, pending);
  }
}

void Group::absorb(IntVec& nf, int g, const Int& e, std::vector<Term>& pending) const {
  int j = -1;
  for (int k = n_ - 1; k > g; --k)
    if (nf(k) != 0) {
      j = k;
      break;
    }
  if (j < 0) {
    nf(g) += e;
    reduce_order(nf, g, pending);
    return;
  }
  Int a = nf(j);
  if (commute_[j][g]) {
    nf(j) = 0;
    pending.push_back({j, a});
    pending.push_back({g, e});
    return;
  }
  if (chunk_[j][g]) {
    // correction word is central: x_j^a g^e = g^e x_j^a [x_j, g]^(a e)
    nf(j) = 0;
    const Word& w = *pres_.commutator_word(j, g);
    Int scale = a * e;
    for (auto it = w.rbegin(); it != w.rend(); ++it) pending.push_back({it->gen, it->exp * scale});
    pending.push_back({j, a});
    pending.push_back({g, e});
    return;
  }
  // one unit at a time: x_j^a g^e = x_j^(a-tau) g^sig x_j^tau [x_j^tau, g^sig] g^(e-sig)
  int sig = sgn(e), tau = sgn(a);
  nf(j) = a - tau;
  const IntVec& w =
      variants_.at(std::make_tuple(j, g, tau, sig));
  pending.push_back({g, e - sig});
  for (int k = n_ - 1; k >= 0; --k)
    if (w(k) != 0) pending.push_back({k, w(k)});
  pending.push_back({j, Int(tau)});
  pending.push_back({g, Int(sig)});
}

void Group::reduce_order(IntVec& nf, int g, std::vector<Term>& pending) const {
  const Int& o = order_of(g);
  if (o == 0 || (nf(g) >= 0 && nf(g) < o)) return;
  Int q = fdiv(nf(g), o);
  nf(g) -= q * o;
  const Word& tail = pres_.gens[g].power_tail;
  if (tail.empty() || q == 0) return;
  if (tail_central_[g]) {
    for (auto it = tail.rbegin(); it != tail.rend(); ++it)
      pending.push_back({it->gen, it->exp * q});
    return;
  }
  const Word w = q > 0 ? tail : inverse_word(tail);
  Int copies = abs(q);
  for (Int c = 0; c < copies; ++c)
    for (auto it = w.rbegin(); it != w.rend(); ++it) pending.push_back({it->gen, it->exp});
}

Element Group::identity() const {
  return Element(shared_from_this(), IntVec::Zero(n_));
}

Element Group::generator(int i) const {
  if (i < 0 || i >= n_) throw InvalidArgument("generator index out of range");
  IntVec e = IntVec::Zero(n_);
  e(i) = 1;
  return Element(shared_from_this(), e);
}

Element Group::element(const IntVec& raw) const {
  if (raw.size() != n_) throw InvalidArgument("exponent vector has wrong length");
  Word w;
  for (int i = 0; i < n_; ++i)
    if (raw(i) != 0) w.push_back({i, raw(i)});
  return collect(w);
}

Element Group::collect(const Word& w) const {
  for (const Term& t : w)
    if (t.gen < 0 || t.gen >= n_) throw InvalidArgument("word references unknown generator");
  return Element(shared_from_this(), collect_vec(w));
}

Element Group::collect(const std::string& word_text) const {
  return collect(parse_word(word_text, pres_));
}

// ------------------------------------------------------- element arithmetic

Element Element::operator*(const Element& o) const {
  if (!grp_ || grp_ != o.grp_) throw GroupMismatch("multiplying elements of different groups");
  Word w;
  for (int i = 0; i < o.exp_.size(); ++i)
    if (o.exp_(i) != 0) w.push_back({i, o.exp_(i)});
  Word mine;
  for (int i = 0; i < exp_.size(); ++i)
    if (exp_(i) != 0) mine.push_back({i, exp_(i)});
  mine.insert(mine.end(), w.begin(), w.end());
  return grp_->collect(mine);
}

Element Element::inverse() const {
  if (!grp_) throw GroupMismatch("inverse of a detached element");
  Word w;
  for (int i = static_cast<int>(exp_.size()) - 1; i >= 0; --i)
    if (exp_(i) != 0) w.push_back({i, -exp_(i)});
  return grp_->collect(w);
}

Element Element::pow(const Int& k) const {
  if (!grp_) throw GroupMismatch("power of a detached element");
  if (k == 0) return grp_->identity();
  Element base = k > 0 ? *this : inverse();
  Int m = abs(k);
  Element acc = grp_->identity();
  Element sq = base;
  while (m > 0) {
    if (mpz_odd_p(m.get_mpz_t())) acc = acc * sq;
    m >>= 1;
    if (m > 0) sq = sq * sq;
  }
  return acc;
}

Element Element::conj(const Element& by) const { return by.inverse() * *this * by; }

Element commutator(const Element& a, const Element& b) {
  return a.inverse() * b.inverse() * a * b;
}

// ---------------------------------------------------------------- overlaps

ConsistencyReport Group::check_overlaps() const {
  ConsistencyReport rep;
  auto fail = [&](std::vector<int> idx, const std::string& what, const Element& lhs,
                  const Element& rhs) {
    rep.consistent = false;
    rep.counterexample = std::move(idx);
    rep.detail = what + ": " + lhs.str() + " != " + rhs.str();
  };
  try {
    std::vector<Element> gen(n_), tail(n_);
    for (int i = 0; i < n_; ++i) {
      gen[i] = generator(i);
      tail[i] = collect(pres_.gens[i].power_tail);
    }
    for (int k = 2; k < n_ && rep.consistent; ++k)
      for (int j = 1; j < k && rep.consistent; ++j)
        for (int i = 0; i < j && rep.consistent; ++i) {
          Element lhs = gen[k] * (gen[j] * gen[i]);
          Element rhs = (gen[k] * gen[j]) * gen[i];
          if (lhs != rhs)
            fail({k, j, i}, "associativity overlap (" + pres_.gens[k].name + "," +
                                pres_.gens[j].name + "," + pres_.gens[i].name + ")",
                 lhs, rhs);
        }
    for (int j = 1; j < n_ && rep.consistent; ++j) {
      if (order_of(j) == 0) continue;
      for (int i = 0; i < j && rep.consistent; ++i) {
        Element lhs = tail[j] * gen[i];
        Element rhs = gen[j].pow(order_of(j) - 1) * (gen[j] * gen[i]);
        if (lhs != rhs)
          fail({j, j, i}, "power overlap " + pres_.gens[j].name + "^e * " + pres_.gens[i].name,
               lhs, rhs);
      }
    }
    for (int i = 0; i < n_ && rep.consistent; ++i) {
      if (order_of(i) == 0) continue;
      for (int j = i + 1; j < n_ && rep.consistent; ++j) {
        Element lhs = gen[j] * tail[i];
        Element rhs = (gen[j] * gen[i]) * gen[i].pow(order_of(i) - 1);
        if (lhs != rhs)
          fail({j, i, i}, "power overlap " + pres_.gens[j].name + " * " + pres_.gens[i].name + "^e",
               lhs, rhs);
      }
      Element lhs = tail[i] * gen[i];
      Element rhs = gen[i] * tail[i];
      if (lhs != rhs)
        fail({i, i, i}, "power overlap " + pres_.gens[i].name + "^e * " + pres_.gens[i].name, lhs,
             rhs);
    }
  } catch (const Error& e) {
    rep.consistent = false;
    rep.detail = e.what();
  }
  return rep;
}

ConsistencyReport check_consistency(const NilpotentPresentation& p) {
  return Group::create_unchecked(p)->check_overlaps();
}

}  // namespace nilkit
