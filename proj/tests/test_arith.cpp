#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nilkit/arith.hpp"

using namespace nilkit;

TEST_CASE("prime set parsing and rendering") {
  CHECK(PrimeSet::parse("all").is_cofinite());
  CHECK(PrimeSet::parse("all").listed().empty());
  auto co = PrimeSet::parse("all\\{2,5}");
  CHECK(co.is_cofinite());
  CHECK(co.listed() == std::vector<Int>{2, 5});
  auto fi = PrimeSet::parse("{2,3}");
  CHECK(!fi.is_cofinite());
  CHECK(fi.str() == "{2,3}");
  CHECK(co.str() == "all\\{2,5}");
  CHECK(PrimeSet::parse(co.str()) == co);
  CHECK_THROWS_AS(PrimeSet::parse("{4}"), InvalidArgument);
  CHECK_THROWS_AS(PrimeSet::parse("nonsense"), InvalidArgument);
}

TEST_CASE("prime set membership") {
  auto co = PrimeSet::all_except({2});
  CHECK(co.contains(3));
  CHECK(co.contains(65537));
  CHECK(!co.contains(2));
  CHECK(!co.contains(4));
  auto fi = PrimeSet::finite({2, 3});
  CHECK(fi.contains(2));
  CHECK(!fi.contains(5));
}

TEST_CASE("is_pi_number examples") {
  auto p23 = PrimeSet::finite({2, 3});
  CHECK(is_pi_number(12, p23));    // 12 = 2^2 * 3
  CHECK(!is_pi_number(10, p23));   // 5 not in pi
  CHECK(is_pi_number(1, p23));     // empty product
  CHECK(is_pi_number(1, PrimeSet::all()));
  CHECK(is_pi_number(1, PrimeSet::finite({})));
  CHECK(is_pi_number(7, PrimeSet::all()));
  CHECK(!is_pi_number(6, PrimeSet::all_except({2})));
  CHECK(is_pi_number(15, PrimeSet::all_except({2})));
  CHECK_THROWS_AS(is_pi_number(0, p23), InvalidArgument);
  CHECK_THROWS_AS(is_pi_number(-3, p23), InvalidArgument);
}

TEST_CASE("is_pi_number is multiplicative") {
  std::mt19937_64 rng(7);
  auto pis = std::vector<PrimeSet>{PrimeSet::finite({2, 3}), PrimeSet::all_except({5}),
                                   PrimeSet::all()};
  for (int it = 0; it < 300; ++it) {
    Int a = 1 + static_cast<long>(rng() % 500);
    Int b = 1 + static_cast<long>(rng() % 500);
    for (const auto& pi : pis)
      CHECK(is_pi_number(a * b, pi) == (is_pi_number(a, pi) && is_pi_number(b, pi)));
  }
}

TEST_CASE("pi_decompose examples") {
  auto d = pi_decompose(12, PrimeSet::finite({2}));
  CHECK(d.pi_part == 4);
  CHECK(d.pi_prime_part == 3);
  d = pi_decompose(35, PrimeSet::finite({2, 3}));
  CHECK(d.pi_part == 1);
  CHECK(d.pi_prime_part == 35);
  d = pi_decompose(8, PrimeSet::all());
  CHECK(d.pi_part == 8);
  CHECK(d.pi_prime_part == 1);
  d = pi_decompose(24, PrimeSet::all_except({2}));
  CHECK(d.pi_part == 3);
  CHECK(d.pi_prime_part == 8);
  CHECK_THROWS_AS(pi_decompose(0, PrimeSet::all()), InvalidArgument);
}

TEST_CASE("pi_decompose parts multiply back, pi_part maximal, exhaustive to 10^6") {
  auto p2 = PrimeSet::finite({2});
  auto odd = PrimeSet::all_except({2});
  for (long n = 1; n <= 1000000; ++n) {
    Int nn(n);
    auto a = pi_decompose(nn, p2);
    CHECK(a.pi_part * a.pi_prime_part == nn);
    auto b = pi_decompose(nn, odd);
    CHECK(b.pi_part * b.pi_prime_part == nn);
    // complementary roles of {2} and all\{2}
    CHECK(a.pi_part == b.pi_prime_part);
  }
}

TEST_CASE("factorize") {
  auto f = factorize(360);
  CHECK(f[Int(2)] == 3);
  CHECK(f[Int(3)] == 2);
  CHECK(f[Int(5)] == 1);
  CHECK(factorize(1).empty());
  auto g = factorize(Int("10000000019"));  // prime past the trial-division bound
  CHECK(g.size() == 1);
  CHECK(g.begin()->second == 1);
}

TEST_CASE("pi number stream ascends") {
  PiNumberStream s(PrimeSet::finite({2, 3}), 30);
  std::vector<Int> got;
  while (auto v = s.next()) got.push_back(*v);
  CHECK(got == std::vector<Int>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27});
  PiNumberStream odd(PrimeSet::all_except({2}), 10);
  std::vector<Int> o;
  while (auto v = odd.next()) o.push_back(*v);
  CHECK(o == std::vector<Int>{1, 3, 5, 7, 9});
}

TEST_CASE("Q_pi operations") {
  auto p2 = PrimeSet::finite({2});
  auto p23 = PrimeSet::finite({2, 3});
  CHECK(qpi_add(make_rat(1, 2), make_rat(1, 2), p2) == 1);
  CHECK_THROWS_AS(qpi_make(1, 3, p2), NotInRing);
  CHECK(qpi_mul(make_rat(1, 2), make_rat(2, 3), p23) == make_rat(1, 3));
  CHECK(qpi_inv(make_rat(4, 3), p23) == make_rat(3, 4));
  CHECK_THROWS_AS(qpi_inv(make_rat(5, 2), p23), NotInRing);
  CHECK(qpi_neg(make_rat(-1, 4), p2) == make_rat(1, 4));
  // 2/6 reduces to 1/3: construction must reject it for pi = {2}
  CHECK_THROWS_AS(qpi_make(2, 6, p2), NotInRing);
}

TEST_CASE("Q_pi closure under ring operations") {
  std::mt19937_64 rng(11);
  auto p23 = PrimeSet::finite({2, 3});
  PiNumberStream s(p23, 200);
  std::vector<Int> dens;
  while (auto v = s.next()) dens.push_back(*v);
  for (int it = 0; it < 500; ++it) {
    Int na = static_cast<long>(rng() % 41) - 20, nb = static_cast<long>(rng() % 41) - 20;
    Rat a = make_rat(na, dens[rng() % dens.size()]);
    Rat b = make_rat(nb, dens[rng() % dens.size()]);
    CHECK(in_qpi(a + b, p23));
    CHECK(in_qpi(a - b, p23));
    CHECK(in_qpi(a * b, p23));
  }
}
