#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "jplus/cli.hpp"
#include "json.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "jplus");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = jplus::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return testing::fixture_path(name); }

}  // namespace

TEST_CASE("sha256") {
  CHECK(jplus::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("build-openbook") {
  const auto r = run({"build-openbook", fx("annulus_pos.ob")});
  CHECK(r.code == 0);
  CHECK(r.out == testing::read_fixture("annulus_pos.hd"));
  const auto bad = run({"build-openbook", fx("bad_curve.ob")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("UnknownCurve") != std::string::npos);
  const auto id = run({"build-openbook", fx("annulus_id.ob"), "--json"});
  CHECK(id.code == 0);
  CHECK(id.out.find("\"+1\"") != std::string::npos);
}

TEST_CASE("at command") {
  const auto pos = run({"at", fx("annulus_pos.hd"), "--json"});
  CHECK(pos.code == 0);
  CHECK(pos.out.find("\"at\": \"survives\"") != std::string::npos);
  const auto neg = run({"at", fx("annulus_neg.ob"), "--json"});
  CHECK(neg.code == 0);
  CHECK(neg.out.find("\"at\": 0") != std::string::npos);
  const auto nn = run({"at", fx("torus_d.hd")});
  CHECK(nn.code == 3);
  CHECK(nn.err.find("NotNice") != std::string::npos);
  CHECK(run({"at", fx("torus_one_point.hd")}).code == 4);
  CHECK(run({"at", fx("does_not_exist.hd")}).code == 2);
  CHECK(run({"at", fx("annulus_pos.hd"), "--max-page", "0"}).code == 2);
}

TEST_CASE("inspect") {
  const auto regions = run({"inspect", fx("torus_one_point.hd"), "--regions"});
  CHECK(regions.code == 0);
  CHECK(regions.out == "0: genus 0 boundary 1 corners 4 e 0 basepoint\n");
  const auto periodic = run({"inspect", fx("annulus_id.hd"), "--periodic", "--json"});
  CHECK(periodic.code == 0);
  CHECK(nlohmann::json::parse(periodic.out).size() == 1);
  const auto matrix = run({"inspect", fx("annulus_neg.hd"), "--matrix"});
  CHECK(matrix.code == 0);
  CHECK(matrix.out.find("JPLUS-MATRIX") != std::string::npos);
  CHECK(run({"inspect", fx("annulus_neg.hd")}).code == 2);
}

TEST_CASE("homology and ss") {
  const auto h = run({"homology", fx("annulus_id.hd")});
  CHECK(h.code == 0);
  CHECK(h.out.find("total rank 2") != std::string::npos);
  const auto ss = run({"ss", fx("torus_weighted.hd"), "--json"});
  CHECK(ss.code == 0);
  CHECK(nlohmann::json::parse(ss.out).size() == 2);
  const auto check = run({"check", fx("annulus_id.hd")});
  CHECK(check.code == 0);
  CHECK(check.out.find("periodic rank 1") != std::string::npos);
}

TEST_CASE("output is deterministic and the cache is transparent") {
  const auto dir = std::filesystem::temp_directory_path() / "jplus_cli_cache_test";
  std::filesystem::remove_all(dir);
  const auto cold = run({"at", fx("torus_weighted.hd"), "--json"});
  const auto again = run({"at", fx("torus_weighted.hd"), "--json"});
  CHECK(cold.out == again.out);
  const auto fill = run({"at", fx("torus_weighted.hd"), "--json", "--cache", dir.string()});
  CHECK(std::filesystem::exists(dir));
  const auto warm = run({"at", fx("torus_weighted.hd"), "--json", "--cache", dir.string()});
  CHECK(fill.out == cold.out);
  CHECK(warm.out == cold.out);
  std::filesystem::remove_all(dir);
}
