#include "doctest.h"
#include "jplus/error.hpp"
#include "jplus/torsion.hpp"
#include "support.hpp"

using namespace jplus;

namespace {

// Is v in the column span of m? Gaussian elimination on the augmented matrix.
bool in_column_span(const gf2::Matrix& m, const gf2::BitVector& v) {
  const std::size_t n = m.rows(), k = m.cols();
  std::vector<std::vector<int>> a(n, std::vector<int>(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = m.get(r, c);
    a[r][k] = v.get(r);
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && !a[p][c]) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != row && a[r][c])
        for (std::size_t j = 0; j <= k; ++j) a[r][j] ^= a[row][j];
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (a[r][k]) return false;
  return true;
}

TorsionReport fixture_report(const std::string& name) {
  const auto d = testing::load_diagram(name);
  DomainSolver s(d);
  const auto cc = testing::contact_complex(s);
  return at_order(cc.complex, cc.theta, 50);
}

}  // namespace

TEST_CASE("weight zero complexes collapse at E^1") {
  gf2::Matrix d0(3, 3);
  d0.set(1, 0);
  const WeightedComplex c(std::vector<Generator>(3), {d0});
  const auto rep = pages(c, 10);
  REQUIRE(rep.pages.size() >= 2);
  CHECK(rep.pages[0] == 1);
  CHECK(rep.pages[1] == 1);
  CHECK(rep.stabilized);
}

TEST_CASE("a single d_1 arrow dies on E^2") {
  gf2::Matrix d0(2, 2), d1(2, 2);
  d1.set(1, 0);
  const WeightedComplex c(std::vector<Generator>(2), {d0, d1});
  const SpectralSequence ss(c);
  CHECK(ss.page(1).rank == 2);
  CHECK(ss.page(2).rank == 0);
  const auto rep = pages(c, 10);
  CHECK(rep.pages.front() == 2);
  CHECK(rep.pages.back() == 0);
}

TEST_CASE("a d_2 arrow survives to E^2") {
  gf2::Matrix z(2, 2), d2(2, 2);
  d2.set(1, 0);
  const WeightedComplex c(std::vector<Generator>(2), {z, z, d2});
  const auto rep = pages(c, 10);
  REQUIRE(rep.pages.size() >= 3);
  CHECK(rep.pages[0] == 2);
  CHECK(rep.pages[1] == 2);
  CHECK(rep.pages[2] == 0);
  // the target of the arrow dies exactly on E^3
  std::vector<Generator> gens(2);
  gens[1].points = {1};
  const WeightedComplex named(gens, {z, z, d2});
  const auto at = at_order(named, gens[1], 10);
  REQUIRE(at.at);
  CHECK(*at.at == 2);
  CHECK(at.contact_nonzero[0]);
  CHECK(at.contact_nonzero[1]);
  CHECK_FALSE(at.contact_nonzero[2]);
}

TEST_CASE("explicit boundaries have order zero") {
  gf2::Matrix d0(2, 2);
  d0.set(1, 0);
  std::vector<Generator> gens(2);
  gens[1].points = {1};
  const auto rep = at_order(WeightedComplex(gens, {d0}), gens[1], 10);
  REQUIRE(rep.at);
  CHECK(*rep.at == 0);
}

TEST_CASE("non-cycles are rejected with the failing part") {
  gf2::Matrix d0(2, 2), d1(2, 2);
  d1.set(1, 0);
  std::vector<Generator> gens(2);
  gens[1].points = {1};
  try {
    at_order(WeightedComplex(gens, {d0, d1}), gens[0], 10);
    FAIL("expected NotACycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACycle);
    CHECK(std::string(e.what()).find("d_1") != std::string::npos);
  }
}

TEST_CASE("annulus open books") {
  const auto pos = fixture_report("annulus_pos.hd");
  CHECK_FALSE(pos.at);
  CHECK(pos.pages.back() == 1);
  const auto id = fixture_report("annulus_id.hd");
  CHECK_FALSE(id.at);
  CHECK(id.pages.back() == 2);

  const auto neg = fixture_report("annulus_neg.hd");
  REQUIRE(neg.at);
  // brute force: theta is already a d_0 boundary
  const auto d = testing::load_diagram("annulus_neg.hd");
  DomainSolver s(d);
  const auto cc = testing::contact_complex(s);
  gf2::BitVector theta(cc.complex.size());
  theta.set(*cc.complex.index_of(cc.theta));
  CHECK(in_column_span(cc.complex.part(0), theta));
  CHECK(*neg.at == 0);
}

TEST_CASE("pages are non-increasing and end at the total homology") {
  for (const char* name : {"annulus_neg.hd", "annulus_id.hd", "torus_id.hd", "torus_weighted.hd", "torus_neg_a_b.hd"}) {
    CAPTURE(name);
    const auto rep = fixture_report(name);
    CHECK(rep.stabilized);
    for (std::size_t r = 1; r < rep.pages.size(); ++r) CHECK(rep.pages[r] <= rep.pages[r - 1]);
    CHECK(rep.pages.back() == rep.total_rank);
    for (std::size_t r = 1; r < rep.contact_nonzero.size(); ++r)
      if (!rep.contact_nonzero[r - 1]) CHECK_FALSE(rep.contact_nonzero[r]);
  }
  const auto w = fixture_report("torus_weighted.hd");
  CHECK(w.pages.front() > w.pages.back());
}

TEST_CASE("report JSON") {
  const auto j = fixture_report("annulus_neg.hd").to_json();
  CHECK(j["at"] == 0);
  CHECK(j["pages"].is_array());
  CHECK(j["contact_class"][0] == "zero");
  CHECK(j.contains("diagnostics"));
  CHECK(fixture_report("annulus_pos.hd").to_json()["at"] == "survives");
}
