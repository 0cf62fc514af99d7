#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilkit/errors.hpp"
#include "nilkit/types.hpp"

namespace nilkit {

// The set pi of primes: a finite set, or all primes minus a finite exclusion set.
// "all" is the cofinite set with empty exclusions.
class PrimeSet {
 public:
  static PrimeSet all();
  static PrimeSet finite(std::vector<Int> primes);
  static PrimeSet all_except(std::vector<Int> primes);

  // text syntax: `all`, `all\{2,5}`, `{2,3}`
  static PrimeSet parse(const std::string& text);
  std::string str() const;

  bool is_cofinite() const { return cofinite_; }
  // inclusion list (finite case) or exclusion list (cofinite case), sorted
  const std::vector<Int>& listed() const { return listed_; }

  bool contains(const Int& p) const;

  bool operator==(const PrimeSet& o) const = default;

 private:
  PrimeSet(bool cofinite, std::vector<Int> listed);
  bool cofinite_ = true;
  std::vector<Int> listed_;
};

// true iff every prime factor of n lies in pi; n = 1 counts (empty product)
bool is_pi_number(const Int& n, const PrimeSet& pi);

// n = pi_part * pi_prime_part with pi_part the maximal pi-number divisor
struct PiDecomposition {
  Int pi_part;
  Int pi_prime_part;
};
PiDecomposition pi_decompose(const Int& n, const PrimeSet& pi);

// full prime factorization; trial division to 10^6, then probabilistic
// primality + Pollard rho for anything left (desk-scale inputs only)
std::map<Int, unsigned> factorize(Int n);

bool is_prime(const Int& n);

// ascending stream of pi-numbers 1, p1, p2, p1^2, ... below `limit`
class PiNumberStream {
 public:
  PiNumberStream(const PrimeSet& pi, const Int& limit);
  // next pi-number, or nullopt once past the limit
  std::optional<Int> next();

 private:
  std::vector<Int> primes_;
  std::vector<Int> heap_;
  Int limit_;
  Int last_ = -1;
};

// --- Q_pi: rationals with pi-number denominators -------------------------

// throws NotInRing unless the reduced denominator is a pi-number
Rat qpi_make(const Int& num, const Int& den, const PrimeSet& pi);
void qpi_check(const Rat& q, const PrimeSet& pi);
bool in_qpi(const Rat& q, const PrimeSet& pi);

Rat qpi_add(const Rat& a, const Rat& b, const PrimeSet& pi);
Rat qpi_mul(const Rat& a, const Rat& b, const PrimeSet& pi);
Rat qpi_neg(const Rat& a, const PrimeSet& pi);
// throws NotInRing unless |numerator| is a pi-number (inverse must stay in Q_pi)
Rat qpi_inv(const Rat& a, const PrimeSet& pi);

}  // namespace nilkit
