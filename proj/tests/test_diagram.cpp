#include <random>

#include "doctest.h"
#include "jplus/error.hpp"
#include "support.hpp"

using namespace jplus;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    validate(parse_diagram_string(text));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::string without_line(std::string text, const std::string& prefix) {
  const auto pos = text.find("\n" + prefix);
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos + 1);
  text.erase(pos, end - pos);
  return text;
}

const char* kFixtures[] = {"torus_one_point.hd", "annulus_pos.hd", "annulus_neg.hd", "annulus_id.hd",
                           "torus_ab.hd",        "torus_weighted.hd", "torus_d.hd"};

}  // namespace

TEST_CASE("segment sides round trip") {
  const auto s = parse_segment_side("b2.13:R");
  REQUIRE(s);
  CHECK(s->segment.kind == CurveKind::Beta);
  CHECK(s->segment.curve == 1);
  CHECK(s->segment.segment == 13);
  CHECK(s->side == Side::Right);
  CHECK(format_segment_side(*s) == "b2.13:R");
  CHECK_FALSE(parse_segment_side("c1.0:L"));
  CHECK_FALSE(parse_segment_side("a0.0:L"));
  CHECK_FALSE(parse_segment_side("a1.0"));
}

TEST_CASE("single point torus has one square region") {
  const auto d = testing::load_diagram("torus_one_point.hd");
  CHECK(d.surface_genus() == 1);
  REQUIRE(d.region_count() == 1);
  CHECK(d.region(0).corners.size() == 4);
  CHECK(d.region(0).euler_measure() == Quarter::integer(0));
  CHECK(d.basepoint_region() == 0);
  CHECK_FALSE(d.contact_points());
}

TEST_CASE("format and parse round trip") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto raw = parse_diagram_string(testing::read_fixture(name));
    const std::string once = format_diagram(raw);
    CHECK(format_diagram(parse_diagram_string(once)) == once);
  }
}

TEST_CASE("validation errors") {
  const std::string good = testing::read_fixture("annulus_id.hd");
  CHECK(kind_of(without_line(good, "BASEPOINT")) == ErrorKind::MissingBasepoint);
  // without the annulus grouping the faces close up into a sphere
  CHECK(kind_of(without_line(good, "REGION")) == ErrorKind::GenusMismatch);
  CHECK(kind_of(good + "PT 1 a=1 b=1 sign=+\n") == ErrorKind::DuplicatePoint);
  CHECK(kind_of(good + "FOO 1\n") == ErrorKind::Parse);
  CHECK(kind_of("HD G=1\nPT 0 a=1 b=2 sign=+\nALPHA 1: 0\nBETA 1: 0\nBASEPOINT a1.0:L\n") == ErrorKind::InconsistentCurve);
}

TEST_CASE("rotation system is recovered from the faces") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto d = testing::load_diagram(name);
    const auto rot = rotation_from_faces(d);
    for (int v = 0; v < d.point_count(); ++v) CHECK(rot[v] == d.rotation(v));
  }
}

TEST_CASE("euler measure is linear and sums to the Euler characteristic") {
  std::mt19937 rng(11);
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const auto d = testing::load_diagram(name);
    const int R = d.region_count();
    RegionVector ones(R, 1);
    CHECK(euler_measure(d, ones) == Quarter::integer(2 - 2 * d.surface_genus()));
    for (int p = 0; p < d.point_count(); ++p) CHECK(point_measure(d, p, ones) == Quarter::integer(1));
    for (int trial = 0; trial < 20; ++trial) {
      RegionVector a(R), b(R), sum(R);
      for (int r = 0; r < R; ++r) {
        a[r] = static_cast<int>(rng() % 7) - 3;
        b[r] = static_cast<int>(rng() % 7) - 3;
        sum[r] = a[r] + 3 * b[r];
      }
      CHECK(euler_measure(d, sum) == euler_measure(d, a) + 3 * euler_measure(d, b));
      for (int p = 0; p < d.point_count(); ++p) CHECK(point_measure(d, p, sum) == point_measure(d, p, a) + 3 * point_measure(d, p, b));
    }
  }
}

TEST_CASE("quarter arithmetic prints exact fractions") {
  CHECK(Quarter::from_quarters(5).str() == "5/4");
  CHECK(Quarter::from_quarters(-2).str() == "-1/2");
  CHECK(Quarter::integer(3).str() == "3");
  CHECK(Quarter::from_quarters(2).is_half_integer());
  CHECK_FALSE(Quarter::from_quarters(1).is_integer());
}
