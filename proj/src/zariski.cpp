#include "nilkit/zariski.hpp"

#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace nilkit {

FreeWord reduce_free(FreeWord w) {
  FreeWord out;
  for (auto& [g, e] : w.terms) {
    if (e == 0) continue;
    if (!out.terms.empty() && out.terms.back().first == g) {
      out.terms.back().second += e;
      if (out.terms.back().second == 0) out.terms.pop_back();
    } else {
      out.terms.push_back({g, e});
    }
  }
  return out;
}

FreeWord FreeWord::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  FreeWord w;
  if (s == "1" || s.empty()) return w;
  size_t pos = 0;
  auto fail = [&](const std::string& m) -> void {
    throw ParseError(m, 1, static_cast<int>(pos) + 1);
  };
  while (pos < s.size()) {
    char c = s[pos];
    int gen = -1;
    if (c == 'x' && pos + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
      gen = s[pos + 1] - '1';
      if (gen < 0) fail("generator index starts at 1");
      pos += 2;
    } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
      gen = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3;
      ++pos;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    long e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::string num;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) num += s[pos++];
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) num += s[pos++];
      if (num.empty() || num == "-" || num == "+") fail("expected exponent");
      e = std::stol(num);
    }
    if (e != 0) w.terms.push_back({gen, e});
    if (pos < s.size()) {
      if (s[pos] != '*') fail("expected '*'");
      ++pos;
    }
  }
  return reduce_free(w);
}

std::string FreeWord::str() const {
  if (terms.empty()) return "1";
  static const char* names[] = {"x", "y", "z", "w"};
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << "*";
    if (terms[i].first < 4)
      os << names[terms[i].first];
    else
      os << "x" << terms[i].first + 1;
    if (terms[i].second != 1) os << "^" << terms[i].second;
  }
  return os.str();
}

int FreeWord::rank_lower_bound() const {
  int r = 0;
  for (auto& [g, e] : terms) r = std::max(r, g + 1);
  return r;
}

long FreeWord::length() const {
  long n = 0;
  for (auto& [g, e] : terms) n += std::abs(e);
  return n;
}

// ---------------------------------------------------------------- groups

void FiniteGroup::validate() const {
  const int n = size();
  if (n == 0 || table_.cols() != n) throw InvalidArgument("Cayley table must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table_(i, j) < 0 || table_(i, j) >= n)
        throw InvalidArgument("Cayley table entry out of range");
  // rows and columns are permutations
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (int j = 0; j < n; ++j) {
      if (row[table_(i, j)] || col[table_(j, i)])
        throw InvalidArgument("Cayley table is not a latin square");
      row[table_(i, j)] = col[table_(j, i)] = true;
    }
  }
  // identity and inverses were located in finish(); associativity via Light's
  // test on a generating set
  std::vector<int> gens;
  std::vector<bool> reached(n, false);
  reached[id_] = true;
  int covered = 1;
  while (covered < n) {
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (!reached[i]) {
        pick = i;
        break;
      }
    gens.push_back(pick);
    std::vector<int> frontier{pick};
    reached[pick] = true;
    ++covered;
    while (!frontier.empty()) {
      int a = frontier.back();
      frontier.pop_back();
      for (int i = 0; i < n; ++i) {
        if (!reached[i]) continue;
        for (int b : {table_(a, i), table_(i, a)})
          if (!reached[b]) {
            reached[b] = true;
            ++covered;
            frontier.push_back(b);
          }
      }
    }
  }
  for (int a : gens)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (table_(table_(x, a), y) != table_(x, table_(a, y)))
          throw InvalidArgument("Cayley table is not associative");
}

void FiniteGroup::finish(std::vector<std::string> labels) {
  const int n = static_cast<int>(table_.rows());
  id_ = -1;
  for (int e = 0; e < n && id_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table_(e, x) == x && table_(x, e) == x;
    if (ok) id_ = e;
  }
  if (id_ < 0) throw InvalidArgument("Cayley table has no identity");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_(a, b) == id_ && table_(b, a) == id_) inv_[a] = b;
    if (inv_[a] < 0) throw InvalidArgument("Cayley table has an element without an inverse");
  }
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (static_cast<int>(labels.size()) != n) throw InvalidArgument("wrong number of labels");
  labels_ = std::move(labels);
  validate();
}

FiniteGroup FiniteGroup::from_table(Eigen::MatrixXi table, std::vector<std::string> labels) {
  FiniteGroup g;
  g.table_ = std::move(table);
  g.finish(std::move(labels));
  return g;
}

FiniteGroup FiniteGroup::parse_table(const std::string& text) {
  std::istringstream is(text);
  long n = 0;
  if (!(is >> n) || n <= 0) throw InvalidArgument("Cayley file must start with the order");
  if (n > max_enum()) throw TooLarge("Cayley table exceeds NILKIT_MAX_ENUM");
  Eigen::MatrixXi t(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (!(is >> t(i, j))) throw InvalidArgument("Cayley file is truncated");
  return from_table(std::move(t));
}

namespace {

FiniteGroup cyclic(int n) {
  Eigen::MatrixXi t(n, n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back("g^" + std::to_string(i));
    for (int j = 0; j < n; ++j) t(i, j) = (i + j) % n;
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup dihedral(int n) {
  // order 2n; elements r^i s^j with s r = r^-1 s
  int sz = 2 * n;
  auto idx = [&](int i, int j) { return j * n + i; };
  Eigen::MatrixXi t(sz, sz);
  std::vector<std::string> labels(sz);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      labels[idx(i, j)] = "r^" + std::to_string(i) + (j ? "s" : "");
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < 2; ++l) {
          int ii = j ? (i - k % n + n) % n : (i + k) % n;
          t(idx(i, j), idx(k, l)) = idx(ii, j ^ l);
        }
    }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup quaternion8() {
  // 0..7 = 1, i, j, k, -1, -i, -j, -k
  auto mulq = [](int a, int b) {
    int sa = a / 4, ua = a % 4, sb = b / 4, ub = b % 4;
    static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // extra minus signs of the quaternion products (i*i = -1, j*i = -k, ...)
    static const int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    int u = axis[ua][ub];
    int s = (sa + sb + neg[ua][ub]) % 2;
    return s * 4 + u;
  };
  Eigen::MatrixXi t(8, 8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t(a, b) = mulq(a, b);
  std::vector<std::string> labels = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

}  // namespace

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.size(), nb = b.size();
  if (static_cast<long>(na) * nb > max_enum()) throw TooLarge("product exceeds NILKIT_MAX_ENUM");
  Eigen::MatrixXi t(na * nb, na * nb);
  std::vector<std::string> labels(na * nb);
  auto idx = [&](int x, int y) { return x * nb + y; };
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1) {
      labels[idx(x1, y1)] = "(" + a.label(x1) + "," + b.label(y1) + ")";
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          t(idx(x1, y1), idx(x2, y2)) = idx(a.mul(x1, x2), b.mul(y1, y2));
    }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::named(const std::string& name) {
  std::string s;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  // product of factors separated by 'x', e.g. "z/2xz/2"
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'x' && !cur.empty() && cur != "z/" && std::isdigit(static_cast<unsigned char>(cur.back()))) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += s[i];
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  auto one = [&](const std::string& p) -> FiniteGroup {
    if (p.rfind("z/", 0) == 0) {
      int n = std::stoi(p.substr(2));
      if (n < 1 || n > max_enum()) throw InvalidArgument("bad cyclic order in " + name);
      FiniteGroup g = cyclic(n);
      g.name_ = "Z/" + std::to_string(n);
      return g;
    }
    if (p == "s3") {
      FiniteGroup g = dihedral(3);
      g.name_ = "S3";
      return g;
    }
    if (p[0] == 'd' && p.size() > 1) {
      int n = std::stoi(p.substr(1));
      if (n < 2 || n > 8) throw InvalidArgument("dihedral groups supported up to D8");
      FiniteGroup g = dihedral(n);
      g.name_ = "D" + std::to_string(n);
      return g;
    }
    if (p == "q8") {
      FiniteGroup g = quaternion8();
      g.name_ = "Q8";
      return g;
    }
    throw InvalidArgument("unknown finite group " + name);
  };
  FiniteGroup g = one(parts[0]);
  std::string nm = g.name();
  for (size_t i = 1; i < parts.size(); ++i) {
    FiniteGroup h = one(parts[i]);
    nm += "x" + h.name();
    g = direct_product(g, h);
    g.name_ = nm;
  }
  return g;
}

int FiniteGroup::pow(int a, long e) const {
  int base = e >= 0 ? a : inv_[a];
  long m = std::abs(e);
  int acc = id_;
  while (m > 0) {
    if (m & 1) acc = mul(acc, base);
    base = mul(base, base);
    m >>= 1;
  }
  return acc;
}

long FiniteGroup::order_of(int a) const {
  long o = 1;
  int x = a;
  while (x != id_) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (int a = 0; a < size(); ++a) e = std::lcm(e, order_of(a));
  return e;
}

// ------------------------------------------------------------- hom space

int eval_word(const FiniteGroup& g, const FreeWord& w, const std::vector<int>& images) {
  int acc = g.identity();
  for (auto& [gen, e] : w.terms) {
    if (gen >= static_cast<int>(images.size()))
      throw InvalidArgument("word uses a generator beyond the rank");
    acc = g.mul(acc, g.pow(images[gen], e));
  }
  return acc;
}

void for_each_hom(int rank, const FiniteGroup& g,
                  const std::function<void(const std::vector<int>&)>& fn) {
  if (rank < 0) throw InvalidArgument("rank must be nonnegative");
  double total = std::pow(static_cast<double>(g.size()), rank);
  if (total > static_cast<double>(max_enum()))
    throw TooLarge("|G|^rank exceeds NILKIT_MAX_ENUM");
  std::vector<int> tuple(rank, 0);
  while (true) {
    fn(tuple);
    int i = 0;
    for (; i < rank; ++i) {
      if (++tuple[i] < g.size()) break;
      tuple[i] = 0;
    }
    if (i == rank) return;
  }
}

std::vector<std::vector<int>> enumerate_homs(int rank, const FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  for_each_hom(rank, g, [&](const std::vector<int>& t) { out.push_back(t); });
  return out;
}

bool closure_membership(const std::vector<FreeWord>& t, const FreeWord& w, const FiniteGroup& g,
                        int rank) {
  int r = rank;
  if (r == 0) {
    r = w.rank_lower_bound();
    for (const FreeWord& s : t) r = std::max(r, s.rank_lower_bound());
    r = std::max(r, 1);
  }
  bool member = true;
  for_each_hom(r, g, [&](const std::vector<int>& images) {
    if (!member) return;
    for (const FreeWord& s : t)
      if (eval_word(g, s, images) != g.identity()) return;
    if (eval_word(g, w, images) != g.identity()) member = false;
  });
  return member;
}

uint64_t kernel_mask64(const FreeWord& w, int rank, const FiniteGroup& g) {
  double total = std::pow(static_cast<double>(g.size()), rank);
  if (total > 64.0) throw TooLarge("kernel_mask64 needs |G|^rank <= 64");
  uint64_t mask = 0;
  uint64_t bit = 1;
  for_each_hom(rank, g, [&](const std::vector<int>& images) {
    if (eval_word(g, w, images) == g.identity()) mask |= bit;
    bit <<= 1;
  });
  return mask;
}

std::pair<bool, bool> equivalence_probe(const std::vector<FreeWord>& t, const FreeWord& w,
                                        const FiniteGroup& g1, const FiniteGroup& g2) {
  return {closure_membership(t, w, g1), closure_membership(t, w, g2)};
}

}  // namespace nilkit
