#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "nilkit/geomequiv.hpp"

using namespace nilkit;

namespace {
GroupPtr heis() {
  static GroupPtr g = Group::create(heisenberg_presentation());
  return g;
}
GroupPtr ex2() {
  static GroupPtr g = Group::create(example2_presentation());
  return g;
}
Element random_element(const GroupPtr& g, std::mt19937_64& rng, int span = 3) {
  IntVec v(g->ngens());
  for (int i = 0; i < g->ngens(); ++i)
    v(i) = static_cast<long>(rng() % (2 * span + 1)) - span;
  return g->element(v);
}
}  // namespace

TEST_CASE("dick_check: worked examples") {
  auto g = heis();
  // x -> x^2, y -> y^2, z -> z^4 satisfies [x,y] = z
  auto d1 = dick_check(
      g, {g->collect("x^2"), g->collect("y^2"), g->collect("z^4")});
  CHECK(d1.homomorphism);
  // x -> x, y -> y, z -> z^2 does not
  auto d2 = dick_check(g, {g->generator(0), g->generator(1), g->collect("z^2")});
  CHECK(!d2.homomorphism);
  // identity images always work
  auto d3 = dick_check(g, {g->generator(0), g->generator(1), g->generator(2)});
  CHECK(d3.homomorphism);
  // torsion relation: example2 with a -> a, b -> b, c -> c
  auto e = ex2();
  CHECK(dick_check(e, {e->generator(0), e->generator(1), e->generator(2)}).homomorphism);
  // but c -> a violates c^4 = 1
  CHECK(!dick_check(e, {e->generator(0), e->generator(1), e->generator(0)}).homomorphism);
}

TEST_CASE("a verified substitution engine respects products") {
  auto g = heis();
  std::vector<Element> images = {g->collect("x^2"), g->collect("y^2"), g->collect("z^4")};
  REQUIRE(dick_check(g, images).homomorphism);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    Element u = random_element(g, rng), v = random_element(g, rng);
    CHECK(apply_generator_map(images, u * v) ==
          apply_generator_map(images, u) * apply_generator_map(images, v));
  }
}

TEST_CASE("power endomorphism witness on relatively free groups") {
  for (const char* spec : {"free_nilpotent:2,2", "free_nilpotent:2,3"}) {
    auto g = Group::create(builtin(spec));
    for (long m : {2L, 3L}) {
      auto w = power_endo_verify(g, m, PrimeSet::all());
      CHECK(w.verified());
      CHECK(w.m == m);
      for (const Element& im : w.images) CHECK(w.image_in->contains(im));
    }
  }
  auto g22 = Group::create(builtin("free_nilpotent:2,2"));
  CHECK(power_endo_verify(g22, 5, PrimeSet::finite({5})).verified());
  CHECK_THROWS_AS(power_endo_verify(g22, 2, PrimeSet::finite({5})), InvalidArgument);
  CHECK_THROWS_AS(power_endo_verify(heis(), 2, PrimeSet::all()), Unsupported);
}

TEST_CASE("witness injectivity cross-check by window search") {
  auto g = Group::create(builtin("free_nilpotent:2,2"));
  auto w = power_endo_verify(g, 2, PrimeSet::all());
  REQUIRE(w.injective);
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c) {
        IntVec v(3);
        v << a, b, c;
        Element e = g->element(v);
        if (apply_generator_map(w.images, e).is_identity()) CHECK(e.is_identity());
      }
}

TEST_CASE("a2 witness for example2 with the full isolator as central") {
  auto e = ex2();
  auto no2 = PrimeSet::all_except({2});
  auto central = Subgroup::generated(e, {e->generator(2)}, true);  // <c>
  auto w = a2_verify(e, no2, 3, central);
  CHECK(w.verified());
  // phi: a -> a^3, b -> b^3, c -> c^9 = c
  CHECK(w.images[0] == e->collect("a^3"));
  CHECK(w.images[1] == e->collect("b^3"));
  CHECK(w.images[2] == e->collect("c^9"));
  // the commutator relation evaluates to c^18 = c^2 on both sides
  bool saw = false;
  for (const auto& rc : w.relations.transcript)
    if (rc.relation.find("[b,a]") != std::string::npos) {
      saw = true;
      CHECK(rc.lhs_nf == "c^2");
      CHECK(rc.rhs_nf == "c^2");
      CHECK(rc.ok);
    }
  CHECK(saw);
  // c^36 = 1 under phi
  CHECK(w.images[2].pow(4).is_identity());
}

TEST_CASE("a2 fails with the derived subgroup as central (quotient torsion)") {
  auto e = ex2();
  auto no2 = PrimeSet::all_except({2});
  auto c2 = Subgroup::generated(e, {e->collect("c^2")}, true);
  try {
    a2_verify(e, no2, 3, c2);
    FAIL("expected hypothesis-failed");
  } catch (const HypothesisFailed& ex) {
    CHECK(std::string(ex.what()).find("torsion") != std::string::npos);
    CHECK(ex.certificate().find("c^1") != std::string::npos);
    CHECK(ex.certificate().find("order 2") != std::string::npos);
  }
}

TEST_CASE("a2 witnesses for the Heisenberg group (torsion-free class-2 case)") {
  auto g = heis();
  auto central = Subgroup::generated(g, {g->collect("z")}, true);
  for (long m : {2L, 3L}) {
    auto w = a2_verify(g, PrimeSet::all(), m, central);
    CHECK(w.verified());
    CHECK(w.images[0] == g->generator(0).pow(m));
    CHECK(w.images[2] == g->generator(2).pow(m * m));
  }
}

TEST_CASE("a2 rejects non-central or non-isolated choices") {
  auto g = heis();
  // <z^2> contains G' = <z>? no - and it is not isolated either; expect failure
  auto z2 = Subgroup::generated(g, {g->collect("z^2")}, true);
  CHECK_THROWS_AS(a2_verify(g, PrimeSet::all(), 2, z2), HypothesisFailed);
  // the whole group is not central
  CHECK_THROWS_AS(a2_verify(g, PrimeSet::all(), 2, Subgroup::whole(g)), HypothesisFailed);
  // class bound
  auto f3 = Group::create(builtin("free_nilpotent:3,2"));
  CHECK_THROWS_AS(
      a2_verify(f3, PrimeSet::all(), 2, Subgroup::generated(f3, {f3->generator(2)}, true)),
      Unsupported);
}

TEST_CASE("heisenberg is isomorphic to the free class-2 group of rank 2") {
  auto h = heis();
  auto f = Group::create(builtin("free_nilpotent:2,2"));
  // x -> x1, y -> x2, z -> c21^-1 and back
  std::vector<Element> fwd = {f->generator(0), f->generator(1), f->generator(2).pow(-1)};
  std::vector<Element> bwd = {h->generator(0), h->generator(1), h->generator(2).pow(-1)};
  CHECK(dick_check(h, fwd).homomorphism);
  CHECK(dick_check(f, bwd).homomorphism);
  // the composites fix the generators, so both maps are isomorphisms
  for (int i = 0; i < 3; ++i) {
    CHECK(apply_generator_map(bwd, fwd[i]) == h->generator(i));
    CHECK(apply_generator_map(fwd, bwd[i]) == f->generator(i));
  }
}

TEST_CASE("abelian structure: worked examples") {
  // Z x Z/5 presented by one relation 5*g2 = 0
  IntMat rel(1, 2);
  rel << 0, 5;
  auto s = abelian_structure(rel, PrimeSet::finite({2, 3}));
  CHECK(s.rank == 1);
  CHECK(s.invariant_factors == std::vector<Int>{5});
  CHECK(s.prime_power_factors == std::vector<Int>{5});
  CHECK(s.pi_valid);
  CHECK(s.completion == "(Q_π⁺)¹ × Z/5");

  IntMat none(0, 2);
  auto s2 = abelian_structure(none, PrimeSet::all());
  CHECK(s2.rank == 2);
  CHECK(s2.invariant_factors.empty());
  CHECK(s2.completion == "(Q_π⁺)²");

  IntMat r4(1, 1);
  r4 << 4;
  auto s3 = abelian_structure(r4, PrimeSet::all());
  CHECK(!s3.pi_valid);  // 4 is a pi-number for pi = all
  CHECK(s3.completion == "Z/4");

  // Z/12 splits into prime powers 4 and 3
  IntMat r12(1, 1);
  r12 << 12;
  auto s4 = abelian_structure(r12, PrimeSet::finite({5}));
  CHECK(s4.prime_power_factors == std::vector<Int>{3, 4});
  CHECK(s4.pi_valid);
}

TEST_CASE("pi-complete finite groups: worked examples") {
  CHECK(is_pi_complete_finite(FiniteGroup::named("Z/5"), PrimeSet::finite({2, 3})));
  CHECK(!is_pi_complete_finite(FiniteGroup::named("Z/3"), PrimeSet::finite({3})));
  CHECK(is_pi_complete_finite(FiniteGroup::named("Z/1"), PrimeSet::all()));
  CHECK(!is_pi_complete_finite(FiniteGroup::named("Z/6"), PrimeSet::finite({2})));
  CHECK(is_pi_complete_finite(FiniteGroup::named("Z/4"), PrimeSet::all_except({2})));
  CHECK(is_pi_complete_finite(FiniteGroup::named("Q8"), PrimeSet::all_except({2})));
  CHECK(!is_pi_complete_finite(FiniteGroup::named("S3"), PrimeSet::finite({3})));
}

TEST_CASE("criterion run: worked examples") {
  auto rep = criterion_run(heis(), PrimeSet::all(), {Int(2), Int(3), Int(4)});
  CHECK(rep.all_verified);
  CHECK(rep.witnesses.size() == 3);

  auto no2 = PrimeSet::all_except({2});
  auto rep2 = criterion_run(ex2(), no2, {Int(3), Int(5)});
  CHECK(rep2.all_verified);
  CHECK(rep2.witnesses.size() == 2);
  CHECK(rep2.central_note.find("full isolator") != std::string::npos);

  CHECK_THROWS_AS(criterion_run(ex2(), no2, {Int(2)}), InvalidArgument);

  auto relfree = criterion_run(Group::create(builtin("free_nilpotent:2,2")), PrimeSet::all(),
                               {Int(2), Int(3)});
  CHECK(relfree.all_verified);
}

TEST_CASE("criterion rejects unsupported shapes") {
  // a class-3 non-free presentation: free_nilpotent:3,2 with the free flag off
  auto p = free_nilpotent_presentation(3, 2);
  p.relatively_free = false;
  auto g = Group::create(p);
  CHECK_THROWS_AS(criterion_run(g, PrimeSet::all(), {Int(2)}), Unsupported);
  // pi-torsion: example2 with pi = all
  CHECK_THROWS_AS(criterion_run(ex2(), PrimeSet::all(), {Int(3)}), HypothesisFailed);
}

TEST_CASE("a2 on a presented class-2 group whose derived subgroup is not isolated") {
  // [y,x] = z^2: G' = <z^2>, I(G') = <z>, G/<z> torsion-free
  auto g = Group::create(parse_presentation("group squared\n"
                                            "gen x\ngen y\ngen z\n"
                                            "rel [y,x] = z^2\n"));
  auto central = Subgroup::generated(g, {g->collect("z")}, true);
  for (long m : {2L, 3L}) {
    auto w = a2_verify(g, PrimeSet::all(), m, central);
    CHECK(w.verified());
    CHECK(w.images[2] == g->generator(2).pow(m * m));
  }
  // with central = G' = <z^2> the quotient has 2-torsion
  CHECK_THROWS_AS(
      a2_verify(g, PrimeSet::all(), 2, Subgroup::generated(g, {g->collect("z^2")}, true)),
      HypothesisFailed);
  // criterion_run picks the working central on its own
  auto rep = criterion_run(g, PrimeSet::all(), {Int(2), Int(3)});
  CHECK(rep.all_verified);
  CHECK(rep.central_note.find("full isolator") == std::string::npos);  // literal I(G') works
}
