#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <string>

namespace nilkit {

// Exact scalars. All exponent arithmetic is arbitrary precision.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

// floor division
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = s*a + t*b
inline Int gcdext(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// reduced rational from a pair of integers
inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline const Int& numerator(const Rat& q) { return q.get_num(); }
inline const Int& denominator(const Rat& q) { return q.get_den(); }

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

}  // namespace nilkit

namespace Eigen {

template <>
struct NumTraits<nilkit::Int> : GenericNumTraits<nilkit::Int> {
  using Real = nilkit::Int;
  using NonInteger = nilkit::Rat;
  using Nested = nilkit::Int;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60,
  };
};

template <>
struct NumTraits<nilkit::Rat> : GenericNumTraits<nilkit::Rat> {
  using Real = nilkit::Rat;
  using NonInteger = nilkit::Rat;
  using Nested = nilkit::Rat;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 120,
    MulCost = 120,
  };
};

}  // namespace Eigen
