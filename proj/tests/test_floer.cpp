#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "jplus/error.hpp"
#include "support.hpp"

using namespace jplus;

namespace {

// Dense rank over the two-element field, written independently of gf2::Matrix.
std::size_t dense_rank(std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

std::size_t oracle_homology(const WeightedComplex& c) {
  std::vector<std::vector<int>> m(c.size(), std::vector<int>(c.size(), 0));
  for (const auto& cd : c.counted) m[cd.to][cd.from] ^= 1;
  return c.size() - 2 * dense_rank(m);
}

std::size_t total_rank(const PointedDiagram& d) {
  DomainSolver s(d);
  const auto gens = enumerate_generators(d);
  std::size_t total = 0;
  for (const auto& cls : spinc_classes(s, gens).classes) {
    std::vector<Generator> g;
    for (int i : cls) g.push_back(gens[i]);
    const auto cx = differential(s, g);
    CHECK(homology_rank(cx) == oracle_homology(cx));
    total += homology_rank(cx);
  }
  return total;
}

}  // namespace

TEST_CASE("niceness") {
  CHECK(is_nice(testing::load_diagram("torus_one_point.hd")).nice);
  CHECK(is_nice(testing::load_diagram("annulus_neg.hd")).nice);
  const auto d = testing::load_diagram("torus_d.hd");
  const auto rep = is_nice(d);
  CHECK_FALSE(rep.nice);
  REQUIRE(rep.offending.size() == 1);
  CHECK(d.region(rep.offending[0]).corners.size() > 4);
  DomainSolver s(d);
  CHECK_THROWS_AS(differential(s, enumerate_generators(d)), Error);
}

TEST_CASE("homology ranks of the annulus open books") {
  CHECK(total_rank(testing::load_diagram("annulus_pos.hd")) == 1);
  CHECK(total_rank(testing::load_diagram("annulus_neg.hd")) == 1);
  CHECK(total_rank(testing::load_diagram("annulus_id.hd")) == 2);
  CHECK(total_rank(testing::load_diagram("torus_one_point.hd")) == 1);
  CHECK(total_rank(testing::load_diagram("torus_ab.hd")) == 1);
  CHECK(total_rank(testing::load_diagram("torus_id.hd")) == 4);
}

TEST_CASE("zero differential gives full rank") {
  std::vector<Generator> gens(5);
  const WeightedComplex c(gens, {});
  CHECK(homology_rank(c) == 5);
}

TEST_CASE("contact generator") {
  for (const char* name : {"annulus_pos.hd", "annulus_neg.hd", "annulus_id.hd", "torus_ab.hd", "torus_weighted.hd"}) {
    CAPTURE(name);
    const auto d = testing::load_diagram(name);
    const auto theta = contact_generator(d);
    CHECK(theta.cycles == d.g_count());
    DomainSolver s(d);
    const auto cc = testing::contact_complex(s);
    gf2::BitVector v(cc.complex.size());
    v.set(*cc.complex.index_of(theta));
    CHECK_FALSE(cc.complex.total().apply(v).any());
  }
  CHECK_THROWS_AS(contact_generator(testing::load_diagram("torus_one_point.hd")), Error);
}

TEST_CASE("differential squares to zero in every weight") {
  for (const char* name : {"annulus_neg.hd", "annulus_id.hd", "torus_id.hd", "torus_weighted.hd"}) {
    CAPTURE(name);
    const auto d = testing::load_diagram(name);
    DomainSolver s(d);
    const auto gens = enumerate_generators(d);
    for (const auto& cls : spinc_classes(s, gens).classes) {
      std::vector<Generator> g;
      for (int i : cls) g.push_back(gens[i]);
      const auto cx = differential(s, g);
      CHECK_NOTHROW(check_differential(cx));
      for (const auto& c : cx.counted) {
        CHECK(c.j_plus == 2 * c.weight);
        if (c.bigon) CHECK(c.weight == 0);
      }
    }
  }
}

TEST_CASE("graded pieces are checked") {
  // d_1 x = y and d_1 y = z: the total squares to a nonzero map
  std::vector<Generator> gens(3);
  gf2::Matrix d0(3, 3), d1(3, 3);
  d1.set(1, 0);
  d1.set(2, 1);
  CHECK_THROWS_AS(check_differential(WeightedComplex(gens, {d0, d1})), Error);
  // x -> y -> w in weight 0 and x -> u -> w in weight 1: the total squares
  // to zero while d_0 d_0 does not
  gf2::Matrix a(4, 4), b(4, 4);
  a.set(1, 0);
  a.set(3, 1);
  b.set(2, 0);
  b.set(3, 2);
  const WeightedComplex split(std::vector<Generator>(4), {a, b});
  CHECK((split.total() * split.total()).is_zero());
  try {
    check_differential(split);
    FAIL("expected LeibnizViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LeibnizViolation);
  }
}

TEST_CASE("homology is invariant under generator reordering") {
  const auto d = testing::load_diagram("torus_weighted.hd");
  DomainSolver s(d);
  auto gens = enumerate_generators(d);
  const auto part = spinc_classes(s, gens);
  std::vector<Generator> g;
  for (int i : part.classes[0]) g.push_back(gens[i]);
  const auto rank = homology_rank(differential(s, g));
  std::mt19937 rng(9);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(g.begin(), g.end(), rng);
    CHECK(homology_rank(differential(s, g)) == rank);
  }
}

TEST_CASE("matrix dump round trip") {
  const auto d = testing::load_diagram("torus_weighted.hd");
  DomainSolver s(d);
  const auto cc = testing::contact_complex(s);
  const std::string text = dump_matrix(cc.complex, d, "abc");
  std::istringstream in(text);
  const auto back = load_matrix(in, d, "abc");
  CHECK(back.generators() == cc.complex.generators());
  REQUIRE(back.part_count() == cc.complex.part_count());
  for (int k = 0; k < back.part_count(); ++k) CHECK(back.part(k) == cc.complex.part(k));
  std::istringstream again(text);
  CHECK_THROWS_AS(load_matrix(again, d, "other"), Error);
}
