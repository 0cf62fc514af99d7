#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <random>

#include "doctest.h"
#include "nilkit/linalg.hpp"

using namespace nilkit;

namespace {

IntMat random_matrix(std::mt19937_64& rng, int m, int n, int span) {
  IntMat a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng() % (2 * span + 1)) - span;
  return a;
}

bool is_unimodular(const IntMat& u) {
  SmithResult s = smith_normal_form(u);
  if (s.rank != u.rows()) return false;
  for (int i = 0; i < s.rank; ++i)
    if (abs(s.d(i, i)) != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form on a known matrix") {
  IntMat a(2, 2);
  a << 2, 4, 6, 8;
  SmithResult s = smith_normal_form(a);
  CHECK(s.rank == 2);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 4);  // invariants of [[2,4],[6,8]]: 2, 4
  CHECK(s.u * a * s.v == s.d);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    int m = 1 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
    IntMat a = random_matrix(rng, m, n, 9);
    SmithResult s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    for (int i = 0; i + 1 < s.rank; ++i) CHECK(divides(s.d(i, i), s.d(i + 1, i + 1)));
    for (int i = 0; i < std::min(m, n); ++i)
      for (int j = 0; j < std::min(m, n); ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
  }
}

TEST_CASE("hermite normal form") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    int m = 1 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 5);
    IntMat a = random_matrix(rng, m, n, 9);
    HermiteResult h = hermite_normal_form(a);
    CHECK(a * h.v == h.h);
    CHECK(is_unimodular(h.v));
    for (int j = h.rank; j < n; ++j) CHECK(h.h.col(j).isZero());
  }
}

TEST_CASE("integer kernel") {
  IntMat a(1, 3);
  a << 2, -4, 6;
  IntMat k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).isZero());
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    IntMat b = random_matrix(rng, 2 + static_cast<int>(rng() % 3), 3 + static_cast<int>(rng() % 3), 6);
    IntMat kb = integer_kernel(b);
    CHECK((b * kb).isZero());
  }
}

TEST_CASE("integer solve and lattice membership") {
  IntMat a(2, 2);
  a << 2, 0, 0, 3;
  IntVec b(2);
  b << 4, 9;
  auto x = solve_integer(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
  b << 1, 3;
  CHECK(!solve_integer(a, b).has_value());
  IntVec v(2);
  v << 6, -3;
  CHECK(lattice_contains(a, v));
  v << 1, 0;
  CHECK(!lattice_contains(a, v));
}

TEST_CASE("lattice saturation exponent") {
  IntMat basis(2, 2);
  basis << 2, 0, 0, 6;
  IntMat vs(2, 2);
  vs << 1, 0, 0, 2;
  CHECK(lattice_saturation_exponent(basis, vs) == 6);  // lcm(2, 3)
  IntMat none(2, 1);
  none << 1, 1;
  IntMat line(2, 1);
  line << 1, 0;
  CHECK(lattice_saturation_exponent(line, none) == 0);  // outside the span of (1,0)
}

TEST_CASE("smith invariants match determinantal divisors") {
  // d_1 * ... * d_k equals the gcd of all k x k minors
  std::mt19937_64 rng(31);
  for (int it = 0; it < 60; ++it) {
    int m = 2 + static_cast<int>(rng() % 3), n = 2 + static_cast<int>(rng() % 3);
    IntMat a = random_matrix(rng, m, n, 6);
    SmithResult s = smith_normal_form(a);
    int kmax = std::min(m, n);
    Int prod = 1;
    for (int k = 1; k <= kmax; ++k) {
      // gcd over all k x k minors, by enumerating row and column subsets
      Int g = 0;
      std::vector<int> rows(k), cols(k);
      std::function<void(int, int)> pick_rows = [&](int from, int depth) {
        if (depth == k) {
          std::function<void(int, int)> pick_cols = [&](int cfrom, int cdepth) {
            if (cdepth == k) {
              IntMat sub(k, k);
              for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
              // exact determinant by cofactor expansion
              std::function<Int(const IntMat&)> det = [&](const IntMat& mm) -> Int {
                if (mm.rows() == 1) return mm(0, 0);
                Int acc = 0;
                for (int c = 0; c < mm.cols(); ++c) {
                  IntMat minor(mm.rows() - 1, mm.cols() - 1);
                  for (int i = 1; i < mm.rows(); ++i) {
                    int jc = 0;
                    for (int j = 0; j < mm.cols(); ++j) {
                      if (j == c) continue;
                      minor(i - 1, jc++) = mm(i, j);
                    }
                  }
                  Int term = mm(0, c) * det(minor);
                  acc += (c % 2 == 0) ? term : -term;
                }
                return acc;
              };
              g = gcd(g, det(sub));
              return;
            }
            for (int j = cfrom; j < n; ++j) {
              cols[cdepth] = j;
              pick_cols(j + 1, cdepth + 1);
            }
          };
          pick_cols(0, 0);
          return;
        }
        for (int i = from; i < m; ++i) {
          rows[depth] = i;
          pick_rows(i + 1, depth + 1);
        }
      };
      pick_rows(0, 0);
      if (k <= s.rank) {
        prod *= s.d(k - 1, k - 1);
        CHECK(g == prod);
      } else {
        CHECK(g == 0);
      }
    }
  }
}
