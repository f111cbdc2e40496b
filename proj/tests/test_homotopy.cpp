#include <random>

#include "doctest.h"
#include "jplus/error.hpp"
#include "support.hpp"

using namespace jplus;

TEST_CASE("cycle counts") {
  CHECK(cycle_count(std::vector<int>{0, 1, 2}) == 3);
  CHECK(cycle_count(std::vector<int>{1, 0}) == 1);
  CHECK(cycle_count(std::vector<int>{1, 2, 0}) == 1);
  CHECK(cycle_count(std::vector<int>{1, 0, 2, 4, 3}) == 3);
}

TEST_CASE("generators") {
  const auto one = testing::load_diagram("torus_one_point.hd");
  const auto g1 = enumerate_generators(one);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].cycles == 1);
  CHECK(g1[0].sigma == std::vector<int>{0});

  // at G = 1 every intersection point is a generator
  for (const char* name : {"annulus_pos.hd", "annulus_neg.hd", "annulus_id.hd"}) {
    const auto d = testing::load_diagram(name);
    CHECK(enumerate_generators(d).size() == static_cast<std::size_t>(d.point_count()));
  }

  const auto d = testing::load_diagram("torus_weighted.hd");
  const auto gens = enumerate_generators(d);
  for (std::size_t i = 1; i < gens.size(); ++i) {
    std::vector<int> a, b;
    for (int p : gens[i - 1].points) a.push_back(d.point(p).id);
    for (int p : gens[i].points) b.push_back(d.point(p).id);
    CHECK(a < b);
  }
  CHECK_THROWS_AS(make_generator(d, {gens[0].points[0], gens[0].points[0]}), Error);
}

TEST_CASE("periodic domains") {
  CHECK(periodic_domains(testing::load_diagram("annulus_pos.hd")).empty());
  CHECK(periodic_domains(testing::load_diagram("annulus_neg.hd")).empty());
  const auto d = testing::load_diagram("annulus_id.hd");
  const auto P = periodic_domains(d);
  REQUIRE(P.size() == 1);
  CHECK(std::any_of(P[0].begin(), P[0].end(), [](auto v) { return v != 0; }));
  CHECK(P[0][d.basepoint_region()] == 0);
  // the two thin strips cancel: one bigon minus the other
  CHECK(weak_admissibility(d));
  CHECK(periodic_domains(testing::load_diagram("torus_id.hd")).size() == 2);

  DomainSolver s(d);
  const auto gens = enumerate_generators(d);
  for (const auto& p : P) CHECK(s.satisfies_corner_condition(gens[0], gens[0], p));
}

TEST_CASE("domains between generators") {
  const auto d = testing::load_diagram("annulus_neg.hd");
  DomainSolver s(d);
  const auto gens = enumerate_generators(d);
  for (const auto& x : gens) {
    const auto D = s.domain_between(x, x);
    REQUIRE(D);
    CHECK(std::all_of(D->coeffs.begin(), D->coeffs.end(), [](auto v) { return v == 0; }));
  }
  for (const auto& x : gens)
    for (const auto& y : gens) {
      const auto D = s.domain_between(x, y);
      REQUIRE(D);
      CHECK(s.satisfies_corner_condition(x, y, D->coeffs));
      CHECK(D->coeffs[d.basepoint_region()] == 0);
    }
}

TEST_CASE("Spin^c classes") {
  const auto one = testing::load_diagram("torus_one_point.hd");
  DomainSolver s1(one);
  CHECK(spinc_classes(s1, enumerate_generators(one)).classes.size() == 1);

  // L(2,1) splits into two classes
  const auto b = testing::build("OB g=0 b=2\nTWIST c^2\n");
  DomainSolver s2(b.diagram);
  const auto gens = enumerate_generators(b.diagram);
  const auto part = spinc_classes(s2, gens, contact_generator(b.diagram));
  CHECK(part.classes.size() == 2);
  REQUIRE(part.contact_class);
  CHECK(!s2.domain_between(gens[part.classes[0][0]], gens[part.classes[1][0]]));
}

TEST_CASE("Maslov index and J+ of counted bigons and squares") {
  int bigons = 0, merges = 0, splits = 0;
  std::vector<CountedDomain> counted;
  std::vector<const PointedDiagram*> owner;
  std::vector<PointedDiagram> diagrams;
  for (const char* name : {"annulus_neg.hd", "torus_id.hd", "torus_weighted.hd", "torus_neg_a_b.hd"})
    diagrams.push_back(testing::load_diagram(name));
  for (const auto& d : diagrams) {
    DomainSolver s(d);
    const auto gens = enumerate_generators(d);
    for (const auto& cls : spinc_classes(s, gens).classes) {
      std::vector<Generator> g;
      for (int i : cls) g.push_back(gens[i]);
      for (auto& c : differential(s, g).counted) {
        counted.push_back(c);
        owner.push_back(&d);
      }
    }
  }
  for (std::size_t k = 0; k < counted.size(); ++k) {
    const PointedDiagram& d = *owner[k];
    const CountedDomain& c = counted[k];
    {
      const Domain& D = c.domain;
      CHECK(maslov(d, D) == 1);
      // direct evaluation: corners contribute a quarter each
      const Quarter e = euler_measure(d, D.coeffs);
      if (c.bigon) {
        ++bigons;
        CHECK(e == Quarter::from_quarters(2));
        CHECK(j_plus(d, D) == 0);
      } else {
        CHECK(e == Quarter::integer(0));
        const int change = D.source.cycles - D.target.cycles;
        CHECK((change == 1 || change == -1));
        if (change == 1) {
          ++merges;
          CHECK(j_plus(d, D) == 2);
        } else {
          ++splits;
          CHECK(j_plus(d, D) == 0);
        }
      }
    }
  }
  CHECK(bigons > 0);
  CHECK(merges > 0);
  CHECK(splits > 0);
}

TEST_CASE("zero domain has index zero") {
  const auto d = testing::load_diagram("annulus_neg.hd");
  const auto gens = enumerate_generators(d);
  const Domain zero{gens[0], gens[0], RegionVector(d.region_count(), 0)};
  CHECK(maslov(d, zero) == 0);
  CHECK(j_plus(d, zero) == 0);
}

TEST_CASE("index additivity under concatenation") {
  std::mt19937 rng(3);
  for (const char* name : {"annulus_id.hd", "torus_id.hd", "torus_weighted.hd"}) {
    CAPTURE(name);
    const auto d = testing::load_diagram(name);
    DomainSolver s(d);
    const auto gens = enumerate_generators(d);
    const auto part = spinc_classes(s, gens);
    for (int trial = 0; trial < 30; ++trial) {
      const auto& cls = part.classes[rng() % part.classes.size()];
      const auto& x = gens[cls[rng() % cls.size()]];
      const auto& y = gens[cls[rng() % cls.size()]];
      const auto& z = gens[cls[rng() % cls.size()]];
      auto a = *s.domain_between(x, y);
      auto b = *s.domain_between(y, z);
      for (const auto& p : s.periodic_basis()) {
        const int k = static_cast<int>(rng() % 5) - 2;
        for (std::size_t r = 0; r < p.size(); ++r) a.coeffs[r] += k * p[r];
      }
      const Domain ab = compose(a, b);
      CHECK(maslov(d, ab) == maslov(d, a) + maslov(d, b));
      CHECK(j_plus(d, ab) == j_plus(d, a) + j_plus(d, b));
    }
  }
}
