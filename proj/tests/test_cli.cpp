#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "blaschke/cli.hpp"
#include "blaschke/io.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace blaschke;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "blaschke");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "blaschke_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string tmp(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("construct with trace") {
  const auto r = run({"construct", oracle::data_path("grunbaum.her"), "-o", tmp("g.off"), "--trace"});
  REQUIRE(r.code == kExitOk);
  const auto trace = nlohmann::json::parse(r.out);
  CHECK(trace["combinatorial_changes"].get<int>() >= 1);
  CHECK(trace["final_residual"].get<double>() <= 1e-9);
  const auto mesh = import_off(read_text_file(tmp("g.off")));
  CHECK(mesh.face_count() == 10);
}

TEST_CASE("construct options") {
  const auto r = run({"construct", oracle::data_path("icosahedron.her"), "-o", tmp("i.off"), "--dt", "0.05", "--tol", "1e-10"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(run({"construct", oracle::data_path("icosahedron.her"), "-o", tmp("i.off"), "--dt", "5"}).code == kExitInputError);
}

TEST_CASE("blaschke sum and report") {
  REQUIRE(run({"bsum", oracle::data_path("dodecahedron.her"), oracle::data_path("icosahedron.her"), "-o", tmp("ball.off")})
              .code == kExitOk);
  const auto r = run({"report", tmp("ball.off")});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["faces"].get<int>() == 32);
  CHECK(j["euler_characteristic"].get<int>() == 2);
  CHECK(j["face_areas"].size() == 32);
  CHECK(j["vector_area_residual_norm"].get<double>() <= 1e-9 * j["total_area"].get<double>());
  CHECK(j.contains("integral_mean_curvature"));
  CHECK(j.contains("volume"));
}

TEST_CASE("minkowski sum of OFF files") {
  write_text_file(tmp("cube.off"), export_off(oracle::cube(1.0)));
  REQUIRE(run({"msum", tmp("cube.off"), tmp("cube.off"), "-o", tmp("cube2.off")}).code == kExitOk);
  const auto j = nlohmann::json::parse(run({"report", tmp("cube2.off")}).out);
  CHECK(j["volume"].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("check subcommands") {
  write_text_file(tmp("cube.off"), export_off(oracle::cube(1.0)));
  const auto ks = run({"check", "ks", oracle::data_path("cube_unit.her"), oracle::data_path("cube_area2.her")});
  CHECK(ks.code == kExitOk);
  CHECK(nlohmann::json::parse(ks.out)["verdict"] == "equality");

  const auto mono = run({"check", "monotone", oracle::data_path("box_1x1x50.her"), oracle::data_path("cube_edge10.her")});
  CHECK(mono.code == kExitOk);
  const auto mj = nlohmann::json::parse(mono.out);
  CHECK(mj["contained_by_translation"] == false);
  CHECK(mj["verdict"] == "holds");

  const auto bad = run({"check", "monotone", oracle::data_path("cube_edge10.her"), oracle::data_path("box_1x1x50.her")});
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("PremiseViolated") != std::string::npos);

  const auto half = run({"check", "exponent", "--a", "0.5", tmp("cube.off"), tmp("cube.off")});
  CHECK(half.code == kExitOk);
  const auto hj = nlohmann::json::parse(half.out);
  CHECK(hj["eq4"]["verdict"] == "fails");
  CHECK(hj["eq4"]["expected_failure"] == true);

  CHECK(run({"check", "bm", tmp("cube.off"), oracle::data_path("icosahedron.her")}).code == kExitOk);
  CHECK(run({"check", "sumcmp", tmp("cube.off"), tmp("cube.off")}).code == kExitOk);
  CHECK(run({"check", "nonsense", tmp("cube.off"), tmp("cube.off")}).code == kExitInputError);
}

TEST_CASE("fuzz output is deterministic") {
  const std::vector<std::string> args{"fuzz", "--trials", "3", "--faces-min", "6", "--faces-max", "8", "--seed", "9"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["unexpected_failure"] == false);
  CHECK(j["checks"].size() == 5);

  const auto low = run({"fuzz", "--trials", "2", "--faces-min", "6", "--faces-max", "8", "--seed", "1", "--checks",
                        "thm81", "--a", "0.5", "--homothet-every", "1"});
  CHECK(low.code == kExitOk);
  CHECK(nlohmann::json::parse(low.out)["checks"]["thm81"]["expected_fails"].get<int>() > 0);

  CHECK(run({"fuzz", "--trials", "1", "--faces-min", "3", "--faces-max", "8", "--seed", "1"}).code == kExitInputError);
  CHECK(run({"fuzz", "--trials", "1", "--faces-min", "6", "--faces-max", "8", "--seed", "1", "--checks", "zz"}).code ==
        kExitInputError);
}

TEST_CASE("sphere check") {
  const auto r = run({"sphere-check", oracle::data_path("hemisphere.txt"), "--refine", "6"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["residual_norm"].get<double>() <= 1e-8);
}

TEST_CASE("input errors exit 1 with a message") {
  auto r = run({"construct", "/nonexistent.her", "-o", tmp("x.off")});
  CHECK(r.code == kExitInputError);
  CHECK_FALSE(r.err.empty());
  write_text_file(tmp("short.her"), "6\n1 0 0 1\n-1 0 0 1\n0 1 0 1\n0 -1 0 1\n0 0 1 1\n");
  r = run({"construct", tmp("short.her"), "-o", tmp("x.off")});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("ParseError") != std::string::npos);
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"--help"}).code == kExitOk);
}
