#include "nilkit/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace nilkit {

long max_enum() {
  static long cap = [] {
    if (const char* env = std::getenv("NILKIT_MAX_ENUM")) {
      long v = std::atol(env);
      if (v > 0) return v;
    }
    return 1000000L;
  }();
  return cap;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // GMP: BPSW + Miller-Rabin rounds; exact for the desk-scale inputs here
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

PrimeSet::PrimeSet(bool cofinite, std::vector<Int> listed)
    : cofinite_(cofinite), listed_(std::move(listed)) {
  std::sort(listed_.begin(), listed_.end());
  listed_.erase(std::unique(listed_.begin(), listed_.end()), listed_.end());
  for (const Int& p : listed_)
    if (!is_prime(p)) throw InvalidArgument("PrimeSet member " + p.get_str() + " is not prime");
}

PrimeSet PrimeSet::all() { return PrimeSet(true, {}); }
PrimeSet PrimeSet::finite(std::vector<Int> primes) { return PrimeSet(false, std::move(primes)); }
PrimeSet PrimeSet::all_except(std::vector<Int> primes) {
  return PrimeSet(true, std::move(primes));
}

namespace {

std::vector<Int> parse_prime_list(const std::string& body, const std::string& full) {
  std::vector<Int> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      if (cur.empty()) throw InvalidArgument("bad prime set syntax: " + full);
      out.emplace_back(cur);
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidArgument("bad prime set syntax: " + full);
    }
  }
  if (!cur.empty()) out.emplace_back(cur);
  return out;
}

}  // namespace

PrimeSet PrimeSet::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "all") return all();
  if (s.rfind("all\\{", 0) == 0 && s.back() == '}')
    return all_except(parse_prime_list(s.substr(5, s.size() - 6), text));
  if (!s.empty() && s.front() == '{' && s.back() == '}')
    return finite(parse_prime_list(s.substr(1, s.size() - 2), text));
  throw InvalidArgument("bad prime set syntax: " + text);
}

std::string PrimeSet::str() const {
  std::ostringstream os;
  if (cofinite_) {
    os << "all";
    if (listed_.empty()) return os.str();
    os << "\\";
  }
  os << "{";
  for (size_t i = 0; i < listed_.size(); ++i) {
    if (i) os << ",";
    os << listed_[i].get_str();
  }
  os << "}";
  return os.str();
}

bool PrimeSet::contains(const Int& p) const {
  if (!is_prime(p)) return false;
  bool in_list = std::binary_search(listed_.begin(), listed_.end(), p);
  return cofinite_ ? !in_list : in_list;
}

bool is_pi_number(const Int& n, const PrimeSet& pi) {
  if (n <= 0) throw InvalidArgument("is_pi_number requires n >= 1");
  if (n == 1) return true;
  if (pi.is_cofinite()) {
    for (const Int& p : pi.listed())
      if (divides(p, n)) return false;
    return true;
  }
  Int m = n;
  for (const Int& p : pi.listed())
    while (divides(p, m)) m /= p;
  return m == 1;
}

PiDecomposition pi_decompose(const Int& n, const PrimeSet& pi) {
  if (n <= 0) throw InvalidArgument("pi_decompose requires n >= 1");
  if (pi.is_cofinite()) {
    // peel off the excluded primes; the rest is the pi-part
    Int prime_part = 1;
    Int m = n;
    for (const Int& p : pi.listed())
      while (divides(p, m)) {
        m /= p;
        prime_part *= p;
      }
    return {m, prime_part};
  }
  Int part = 1;
  Int m = n;
  for (const Int& p : pi.listed())
    while (divides(p, m)) {
      m /= p;
      part *= p;
    }
  return {part, m};
}

namespace {

Int pollard_rho(const Int& n) {
  if (divides(2, n)) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xb5297a4dUL);
  while (true) {
    Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = gcd(abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n]++;
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Int, unsigned> factorize(Int n) {
  if (n <= 0) throw InvalidArgument("factorize requires n >= 1");
  std::map<Int, unsigned> out;
  for (Int p = 2; p * p <= n && p < 1000000; p == 2 ? p = 3 : p += 2)
    while (divides(p, n)) {
      out[p]++;
      n /= p;
    }
  factor_into(n, out);
  return out;
}

PiNumberStream::PiNumberStream(const PrimeSet& pi, const Int& limit) : limit_(limit) {
  if (pi.is_cofinite()) {
    // sieve small primes, drop exclusions
    long bound = 1000;
    if (limit_ < bound) bound = std::max(2L, static_cast<long>(limit_.get_si()));
    std::vector<bool> comp(bound + 1, false);
    for (long p = 2; p <= bound; ++p) {
      if (comp[p]) continue;
      if (pi.contains(p)) primes_.emplace_back(p);
      for (long q = p * p; q <= bound; q += p) comp[q] = true;
    }
  } else {
    for (const Int& p : pi.listed())
      if (p <= limit_) primes_.push_back(p);
  }
  heap_.push_back(1);
}

std::optional<Int> PiNumberStream::next() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<Int>());
    Int v = heap_.back();
    heap_.pop_back();
    if (v == last_) continue;  // duplicates from different factorizations
    last_ = v;
    for (const Int& p : primes_) {
      Int w = v * p;
      if (w <= limit_) {
        heap_.push_back(w);
        std::push_heap(heap_.begin(), heap_.end(), std::greater<Int>());
      }
    }
    return v;
  }
  return std::nullopt;
}

Rat qpi_make(const Int& num, const Int& den, const PrimeSet& pi) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rat q = make_rat(num, den);
  qpi_check(q, pi);
  return q;
}

bool in_qpi(const Rat& q, const PrimeSet& pi) { return is_pi_number(denominator(q), pi); }

void qpi_check(const Rat& q, const PrimeSet& pi) {
  if (!in_qpi(q, pi))
    throw NotInRing("denominator " + denominator(q).get_str() + " is not a " + pi.str() +
                    "-number");
}

Rat qpi_add(const Rat& a, const Rat& b, const PrimeSet& pi) {
  qpi_check(a, pi);
  qpi_check(b, pi);
  return a + b;
}

Rat qpi_mul(const Rat& a, const Rat& b, const PrimeSet& pi) {
  qpi_check(a, pi);
  qpi_check(b, pi);
  return a * b;
}

Rat qpi_neg(const Rat& a, const PrimeSet& pi) {
  qpi_check(a, pi);
  return -a;
}

Rat qpi_inv(const Rat& a, const PrimeSet& pi) {
  qpi_check(a, pi);
  if (a == 0) throw InvalidArgument("inverse of zero");
  if (!is_pi_number(abs(numerator(a)), pi))
    throw NotInRing("numerator " + numerator(a).get_str() +
                    " is not a pi-number; inverse leaves Q_pi");
  Rat r = 1 / a;
  return r;
}

}  // namespace nilkit
