#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nilkit/zariski.hpp"

using namespace nilkit;

namespace {

// independent pointwise oracle: recursive word evaluation, recursive
// enumeration of assignments
int slow_eval(const FiniteGroup& g, const FreeWord& w, const std::vector<int>& images,
              size_t at = 0) {
  if (at == w.terms.size()) return g.identity();
  auto [gen, e] = w.terms[at];
  int acc = g.identity();
  int step = e > 0 ? images[gen] : g.inv(images[gen]);
  for (long i = 0; i < std::abs(e); ++i) acc = g.mul(acc, step);
  return g.mul(acc, slow_eval(g, w, images, at + 1));
}

bool slow_membership(const std::vector<FreeWord>& t, const FreeWord& w, const FiniteGroup& g,
                     int rank, std::vector<int>& images) {
  if (static_cast<int>(images.size()) == rank) {
    for (const FreeWord& s : t)
      if (slow_eval(g, s, images) != g.identity()) return true;
    return slow_eval(g, w, images) == g.identity();
  }
  for (int a = 0; a < g.size(); ++a) {
    images.push_back(a);
    bool ok = slow_membership(t, w, g, rank, images);
    images.pop_back();
    if (!ok) return false;
  }
  return true;
}

bool slow_membership(const std::vector<FreeWord>& t, const FreeWord& w, const FiniteGroup& g,
                     int rank) {
  std::vector<int> images;
  return slow_membership(t, w, g, rank, images);
}

}  // namespace

TEST_CASE("free word parsing") {
  FreeWord w = FreeWord::parse("x^2*y^-1*x");
  CHECK(w.str() == "x^2*y^-1*x");
  CHECK(w.rank_lower_bound() == 2);
  CHECK(w.length() == 4);
  CHECK(FreeWord::parse("1").terms.empty());
  CHECK(FreeWord::parse("x*x^-1").terms.empty());
  CHECK(FreeWord::parse("x1^3*x2") == FreeWord::parse("x^3*y"));
  CHECK_THROWS_AS(FreeWord::parse("q"), ParseError);
}

TEST_CASE("builtin finite groups validate") {
  for (const char* name : {"Z/2", "Z/3", "Z/4", "Z/5", "Z/2xZ/2", "S3", "D4", "Q8", "Z/6",
                           "Z/2xZ/3"}) {
    auto g = FiniteGroup::named(name);
    CHECK(g.size() > 0);
  }
  CHECK(FiniteGroup::named("Z/2xZ/2").size() == 4);
  CHECK(FiniteGroup::named("S3").size() == 6);
  CHECK(FiniteGroup::named("D4").size() == 8);
  CHECK(FiniteGroup::named("Q8").size() == 8);
  CHECK_THROWS_AS(FiniteGroup::named("E8"), InvalidArgument);
  CHECK_THROWS_AS(FiniteGroup::named("D9"), InvalidArgument);
}

TEST_CASE("quaternion group structure") {
  auto q = FiniteGroup::named("Q8");
  CHECK(q.exponent() == 4);
  int minus_one = -1;
  for (int a = 0; a < 8; ++a)
    if (a != q.identity() && q.order_of(a) == 2) minus_one = a;
  REQUIRE(minus_one >= 0);
  // exactly one element of order 2
  int count2 = 0;
  for (int a = 0; a < 8; ++a) count2 += q.order_of(a) == 2;
  CHECK(count2 == 1);
}

TEST_CASE("cayley table parsing and rejection") {
  CHECK(FiniteGroup::parse_table("2\n0 1\n1 0\n").size() == 2);
  // a latin square that is not associative (rank-5 quasigroup)
  CHECK_THROWS_AS(FiniteGroup::parse_table("5\n"
                                           "0 1 2 3 4\n"
                                           "1 0 3 4 2\n"
                                           "2 4 0 1 3\n"
                                           "3 2 4 0 1\n"
                                           "4 3 1 2 0\n"),
                  InvalidArgument);
  CHECK_THROWS_AS(FiniteGroup::parse_table("2\n0 0\n1 1\n"), InvalidArgument);
}

TEST_CASE("hom enumeration counts") {
  CHECK(enumerate_homs(1, FiniteGroup::named("Z/2")).size() == 2);
  CHECK(enumerate_homs(2, FiniteGroup::named("Z/2")).size() == 4);
  CHECK(enumerate_homs(2, FiniteGroup::named("S3")).size() == 36);
  CHECK(enumerate_homs(0, FiniteGroup::named("S3")).size() == 1);
}

TEST_CASE("closure membership: worked examples") {
  auto z2 = FiniteGroup::named("Z/2");
  std::vector<FreeWord> t = {FreeWord::parse("x^2")};
  CHECK(!closure_membership(t, FreeWord::parse("x"), z2));
  CHECK(closure_membership(t, FreeWord::parse("x^4"), z2));
  CHECK(closure_membership({FreeWord::parse("x")}, FreeWord::parse("x"), z2));
}

TEST_CASE("equivalence probe: worked examples") {
  auto z2 = FiniteGroup::named("Z/2");
  auto z22 = FiniteGroup::named("Z/2xZ/2");
  auto z3 = FiniteGroup::named("Z/3");
  std::vector<FreeWord> t = {FreeWord::parse("x^2")};
  auto pr = equivalence_probe(t, FreeWord::parse("x"), z2, z22);
  CHECK(pr == std::make_pair(false, false));
  pr = equivalence_probe(t, FreeWord::parse("x"), z2, z3);
  CHECK(pr == std::make_pair(false, true));
  pr = equivalence_probe({FreeWord::parse("1")}, FreeWord::parse("1"), z2, z3);
  CHECK(pr == std::make_pair(true, true));
}

TEST_CASE("closure operator laws") {
  auto s3 = FiniteGroup::named("S3");
  std::vector<FreeWord> t = {FreeWord::parse("x^2"), FreeWord::parse("y^3")};
  // kernel law: T subset of T''
  for (const FreeWord& w : t) CHECK(closure_membership(t, w, s3));
  // monotone: w in T'' and T subset S implies w in S''
  std::vector<FreeWord> bigger = t;
  bigger.push_back(FreeWord::parse("x*y*x^-1*y^-1"));
  std::mt19937_64 rng(12);
  std::vector<std::string> pool = {"x", "y", "x*y", "x^2*y", "y^2", "x^3", "x*y*x", "y*x*y^-1"};
  for (const auto& ws : pool) {
    FreeWord w = FreeWord::parse(ws);
    if (closure_membership(t, w, s3)) CHECK(closure_membership(bigger, w, s3));
  }
  // augmentation stability: adding certified members does not change membership
  std::vector<FreeWord> augmented = t;
  for (const auto& ws : pool)
    if (closure_membership(t, FreeWord::parse(ws), s3))
      augmented.push_back(FreeWord::parse(ws));
  for (const auto& ws : pool)
    CHECK(closure_membership(t, FreeWord::parse(ws), s3) ==
          closure_membership(augmented, FreeWord::parse(ws), s3));
}

TEST_CASE("closure membership agrees with the slow oracle on random cases") {
  std::mt19937_64 rng(77);
  std::vector<FiniteGroup> groups;
  for (const char* n : {"Z/2", "Z/3", "Z/4", "Z/2xZ/2", "S3"}) groups.push_back(FiniteGroup::named(n));
  auto random_word = [&](int rank, int len) {
    FreeWord w;
    for (int i = 0; i < len; ++i)
      w.terms.push_back({static_cast<int>(rng() % rank), static_cast<long>(rng() % 5) - 2});
    return reduce_free(w);
  };
  for (int it = 0; it < 300; ++it) {
    const FiniteGroup& g = groups[rng() % groups.size()];
    int rank = 1 + static_cast<int>(rng() % 2);
    std::vector<FreeWord> t = {random_word(rank, 3)};
    if (rng() % 2) t.push_back(random_word(rank, 2));
    FreeWord w = random_word(rank, 3);
    CHECK(closure_membership(t, w, g, rank) == slow_membership(t, w, g, rank));
  }
}

TEST_CASE("kernel masks match the pointwise evaluation") {
  auto s3 = FiniteGroup::named("S3");
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    FreeWord w;
    for (int i = 0; i < 3; ++i)
      w.terms.push_back({static_cast<int>(rng() % 2), static_cast<long>(rng() % 5) - 2});
    w = reduce_free(w);
    uint64_t mask = kernel_mask64(w, 2, s3);
    size_t bit = 0;
    for (const auto& images : enumerate_homs(2, s3)) {
      CHECK(((mask >> bit) & 1) == (eval_word(s3, w, images) == s3.identity() ? 1u : 0u));
      ++bit;
    }
  }
}

TEST_CASE("enumeration bound is enforced") {
  auto big = FiniteGroup::named("Z/101");
  CHECK_THROWS_AS(enumerate_homs(3, big), TooLarge);
}
