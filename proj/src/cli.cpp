#include "blaschke/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "blaschke/error.hpp"
#include "blaschke/geometry.hpp"
#include "blaschke/herisson.hpp"
#include "blaschke/inequalities.hpp"
#include "blaschke/io.hpp"
#include "blaschke/solver.hpp"
#include "blaschke/spherical.hpp"
#include "blaschke/sums.hpp"

namespace blaschke {

namespace {

using nlohmann::ordered_json;

bool is_herisson_path(const std::string& path) { return std::filesystem::path(path).extension() == ".her"; }

MeshPolyhedron load_mesh(const std::string& path, const ContinuationConfig& cfg) {
  const std::string text = read_text_file(path);
  if (is_herisson_path(path)) return continuation_solve(parse_herisson(text), cfg).mesh;
  return import_off(text);
}

Herisson load_herisson(const std::string& path) {
  const std::string text = read_text_file(path);
  if (is_herisson_path(path)) return parse_herisson(text);
  return herisson_of_mesh(import_off(text));
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

ordered_json report_json(const InequalityReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["verdict"] = std::string(to_string(r.verdict));
  j["equality_tol"] = r.equality_tol;
  if (r.homothetic) j["homothetic"] = *r.homothetic;
  if (r.contained) j["contained_by_translation"] = *r.contained;
  if (r.verdict == Verdict::Fails) j["expected_failure"] = r.expected_failure;
  return j;
}

ordered_json trace_json(const SolveTrace& t) {
  ordered_json j;
  j["steps_taken"] = t.steps_taken;
  j["final_residual"] = t.final_residual;
  j["combinatorial_changes"] = t.combinatorial_changes;
  j["dt_history"] = t.dt_history;
  return j;
}

ordered_json mesh_report_json(const MeshPolyhedron& p) {
  ordered_json j;
  const long v = static_cast<long>(p.vertices.size());
  const long e = static_cast<long>(p.edge_count());
  const long f = static_cast<long>(p.face_count());
  j["vertices"] = v;
  j["edges"] = e;
  j["faces"] = f;
  j["euler_characteristic"] = v - e + f;
  j["euler_ok"] = (v - e + f) == 2;
  j["volume"] = volume(p);
  j["total_area"] = p.total_area();
  std::vector<double> areas;
  for (std::size_t i = 0; i < p.face_slots(); ++i)
    if (!p.faces[i].empty()) areas.push_back(p.face_areas[i]);
  j["face_areas"] = areas;
  j["integral_mean_curvature"] = integral_mean_curvature(p);
  j["vector_area_residual_norm"] = vector_area_residual(p).norm();
  j["diameter"] = p.diameter();
  return j;
}

std::vector<Check> parse_check_list(const std::string& list) {
  if (list == "all") return FuzzConfig{}.checks;
  std::vector<Check> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_check(item));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty check list");
  return out;
}

ordered_json fuzz_json(const FuzzConfig& cfg, const FuzzSummary& s) {
  ordered_json j;
  j["trials"] = cfg.trials;
  j["faces_min"] = cfg.faces_min;
  j["faces_max"] = cfg.faces_max;
  j["seed"] = cfg.seed;
  j["a"] = cfg.a;
  ordered_json checks = ordered_json::object();
  for (const auto& [check, t] : s.tallies) {
    ordered_json c;
    c["holds"] = t.holds;
    c["equality"] = t.equality;
    c["fails"] = t.fails;
    c["expected_fails"] = t.expected_fails;
    c["worst_relative_residual"] = t.worst_relative_residual;
    c["failing_seeds"] = t.failing_seeds;
    if (check == Check::KneserSuss) c["equality_mismatches"] = t.equality_mismatches;
    checks[std::string(to_string(check))] = c;
  }
  j["checks"] = checks;
  ordered_json errors = ordered_json::array();
  for (const auto& [seed, msg] : s.errors) errors.push_back({{"seed", seed}, {"error", msg}});
  j["errors"] = errors;
  j["unexpected_failure"] = s.unexpected_failure();
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex polyhedra from face normals and areas; Minkowski and Blaschke sums"};
  app.require_subcommand(1);

  ContinuationConfig solver_cfg;

  auto* construct = app.add_subcommand("construct", "Reconstruct a polyhedron from a .her file");
  std::string construct_in, construct_out;
  bool construct_trace = false;
  construct->add_option("input", construct_in, "Herisson file")->required();
  construct->add_option("-o,--output", construct_out, "Output OFF file")->required();
  construct->add_option("--dt", solver_cfg.dt_initial, "Initial continuation step");
  construct->add_option("--tol", solver_cfg.newton_tol, "Relative area tolerance");
  construct->add_flag("--trace", construct_trace, "Print the solve trace as JSON");

  auto* bsum = app.add_subcommand("bsum", "Blaschke sum of two bodies (.off or .her)");
  std::string bsum_a, bsum_b, bsum_out;
  bsum->add_option("a", bsum_a)->required();
  bsum->add_option("b", bsum_b)->required();
  bsum->add_option("-o,--output", bsum_out)->required();

  auto* msum = app.add_subcommand("msum", "Minkowski sum of two bodies (.off or .her)");
  std::string msum_a, msum_b, msum_out;
  msum->add_option("a", msum_a)->required();
  msum->add_option("b", msum_b)->required();
  msum->add_option("-o,--output", msum_out)->required();

  auto* check = app.add_subcommand("check", "Evaluate one inequality and print a JSON report");
  std::string check_kind, check_a, check_b;
  double check_exponent = 1.0;
  check->add_option("kind", check_kind)
      ->required()
      ->check(CLI::IsMember({"bm", "ks", "monotone", "sumcmp", "exponent"}));
  check->add_option("a_body", check_a)->required();
  check->add_option("b_body", check_b)->required();
  check->add_option("--a", check_exponent, "Exponent for the exponent check");

  auto* fuzz = app.add_subcommand("fuzz", "Randomized campaign over all inequalities");
  FuzzConfig fuzz_cfg;
  std::string fuzz_checks = "all";
  fuzz->add_option("--trials", fuzz_cfg.trials)->required();
  fuzz->add_option("--faces-min", fuzz_cfg.faces_min)->required();
  fuzz->add_option("--faces-max", fuzz_cfg.faces_max)->required();
  fuzz->add_option("--seed", fuzz_cfg.seed)->required();
  fuzz->add_option("--checks", fuzz_checks, "Comma-separated subset of bm,ks,thm71,thm75,thm81");
  fuzz->add_option("--a", fuzz_cfg.a, "Exponent for thm81");
  fuzz->add_option("--homothet-every", fuzz_cfg.homothet_every, "Inject a homothetic pair every n trials");

  auto* report = app.add_subcommand("report", "Measurements of an OFF mesh as JSON");
  std::string report_in;
  report->add_option("mesh", report_in)->required();

  auto* sphere = app.add_subcommand("sphere-check", "Spherical vector-area identity residual");
  std::string sphere_in;
  int sphere_refine = 6;
  sphere->add_option("polygon", sphere_in)->required();
  sphere->add_option("--refine", sphere_refine)->check(CLI::Range(1, 12));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*construct) {
      const auto result = continuation_solve(parse_herisson(read_text_file(construct_in)), solver_cfg);
      write_text_file(construct_out, export_off(result.mesh));
      if (construct_trace) out << trace_json(result.trace).dump(2) << "\n";
      return kExitOk;
    }
    if (*bsum) {
      const auto a = load_mesh(bsum_a, solver_cfg);
      const auto b = load_mesh(bsum_b, solver_cfg);
      write_text_file(bsum_out, export_off(blaschke_sum_bodies(a, b, solver_cfg)));
      return kExitOk;
    }
    if (*msum) {
      const auto a = load_mesh(msum_a, solver_cfg);
      const auto b = load_mesh(msum_b, solver_cfg);
      write_text_file(msum_out, export_off(minkowski_sum(a, b)));
      return kExitOk;
    }
    if (*check) {
      ordered_json j;
      bool failed = false;
      if (check_kind == "monotone") {
        const auto r = monotonicity_check(load_herisson(check_a), load_herisson(check_b), solver_cfg);
        j = report_json(r);
        failed = !r.ok();
      } else if (check_kind == "exponent") {
        const auto rs =
            exponent_check(load_mesh(check_a, solver_cfg), load_mesh(check_b, solver_cfg), check_exponent, solver_cfg);
        j["name"] = "exponent";
        j["a"] = check_exponent;
        j["eq4"] = report_json(rs.minkowski);
        j["eq5"] = report_json(rs.blaschke);
        failed = !rs.minkowski.ok() || !rs.blaschke.ok();
        if (check_exponent < 1.0 && (rs.minkowski.expected_failure || rs.blaschke.expected_failure)) {
          j["note"] = "failure expected for exponent a < 1";
        }
      } else {
        const auto a = load_mesh(check_a, solver_cfg);
        const auto b = load_mesh(check_b, solver_cfg);
        InequalityReport r;
        if (check_kind == "bm") r = brunn_minkowski_check(a, b);
        if (check_kind == "ks") r = kneser_suss_check(a, b, solver_cfg);
        if (check_kind == "sumcmp") r = sum_comparison_check(a, b, solver_cfg);
        j = report_json(r);
        failed = !r.ok();
      }
      out << j.dump() << "\n";
      return failed ? kExitInequalityFails : kExitOk;
    }
    if (*fuzz) {
      fuzz_cfg.checks = parse_check_list(fuzz_checks);
      const auto summary = fuzz_campaign(fuzz_cfg);
      out << fuzz_json(fuzz_cfg, summary).dump(2) << "\n";
      return summary.unexpected_failure() ? kExitFuzzFailure : kExitOk;
    }
    if (*report) {
      out << mesh_report_json(import_off(read_text_file(report_in))).dump(2) << "\n";
      return kExitOk;
    }
    if (*sphere) {
      const auto terms = spherical_identity_terms(parse_polygon(read_text_file(sphere_in)), sphere_refine);
      ordered_json j;
      j["refinement"] = sphere_refine;
      j["area_term"] = vec_json(terms.area_term);
      j["boundary_term"] = vec_json(terms.boundary_term);
      j["residual"] = vec_json(terms.residual());
      j["residual_norm"] = terms.residual().norm();
      out << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace blaschke
