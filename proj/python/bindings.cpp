#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blaschke/cli.hpp"
#include "blaschke/error.hpp"
#include "blaschke/herisson.hpp"
#include "blaschke/inequalities.hpp"
#include "blaschke/io.hpp"
#include "blaschke/solver.hpp"
#include "blaschke/spherical.hpp"
#include "blaschke/sums.hpp"

namespace py = pybind11;
using namespace blaschke;

namespace {

using Triple = std::array<double, 3>;

Triple to_triple(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

py::dict report_dict(const InequalityReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["residual"] = r.residual;
  d["verdict"] = std::string(to_string(r.verdict));
  d["expected_failure"] = r.expected_failure;
  d["homothetic"] = r.homothetic ? py::cast(*r.homothetic) : py::none();
  d["contained"] = r.contained ? py::cast(*r.contained) : py::none();
  return d;
}

ContinuationConfig config(double dt, double tol) {
  ContinuationConfig cfg;
  cfg.dt_initial = dt;
  cfg.newton_tol = tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convex polyhedra from face normals and areas";

  static py::exception<Error> error(m, "BlaschkeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Herisson>(m, "Herisson")
      .def_static(
          "from_entries",
          [](const std::vector<std::pair<Triple, double>>& rows) {
            std::vector<HerissonEntry> raw;
            for (const auto& [n, a] : rows) raw.push_back({Direction::from_xyz(n[0], n[1], n[2]), a});
            return validate_herisson(raw);
          },
          py::arg("entries"), "Validate (normal, area) pairs; normals need not be unit.")
      .def_static("parse", &parse_herisson, py::arg("text"))
      .def_static("random", &random_herisson, py::arg("k"), py::arg("seed"))
      .def("format", &format_herisson)
      .def("__len__", &Herisson::size)
      .def_property_readonly("normals",
                             [](const Herisson& h) {
                               std::vector<Triple> out;
                               for (const auto& d : h.directions()) out.push_back(to_triple(d.vec()));
                               return out;
                             })
      .def_property_readonly("areas", &Herisson::areas)
      .def_property_readonly("total_area", &Herisson::total_area)
      .def_property_readonly("closure_residual", [](const Herisson& h) { return to_triple(h.closure_residual()); })
      .def("__add__", &blaschke_add)
      .def("scaled", &blaschke_scale, py::arg("t"));

  py::class_<MeshPolyhedron>(m, "Mesh")
      .def_static("from_off", &import_off, py::arg("text"))
      .def_static("hull", [](const std::vector<Triple>& pts) {
        std::vector<Vec3> v;
        for (const auto& p : pts) v.emplace_back(p[0], p[1], p[2]);
        return convex_hull(v);
      })
      .def("to_off", &export_off)
      .def_property_readonly("vertices",
                             [](const MeshPolyhedron& p) {
                               std::vector<Triple> out;
                               for (const auto& v : p.vertices) out.push_back(to_triple(v));
                               return out;
                             })
      .def_property_readonly("faces",
                             [](const MeshPolyhedron& p) {
                               std::vector<std::vector<std::size_t>> out;
                               for (const auto& f : p.faces)
                                 if (!f.empty()) out.push_back(f);
                               return out;
                             })
      .def_property_readonly("face_areas",
                             [](const MeshPolyhedron& p) {
                               std::vector<double> out;
                               for (std::size_t j = 0; j < p.face_slots(); ++j)
                                 if (!p.faces[j].empty()) out.push_back(p.face_areas[j]);
                               return out;
                             })
      .def_property_readonly("face_count", &MeshPolyhedron::face_count)
      .def_property_readonly("edge_count", &MeshPolyhedron::edge_count)
      .def_property_readonly("volume", [](const MeshPolyhedron& p) { return volume(p); })
      .def_property_readonly("total_area", &MeshPolyhedron::total_area)
      .def_property_readonly("diameter", &MeshPolyhedron::diameter)
      .def_property_readonly("integral_mean_curvature", [](const MeshPolyhedron& p) { return integral_mean_curvature(p); })
      .def_property_readonly("vector_area_residual",
                             [](const MeshPolyhedron& p) { return to_triple(vector_area_residual(p)); })
      .def("herisson", &herisson_of_mesh)
      .def("scaled", &scaled, py::arg("factor"))
      .def("contains_translate_of", [](const MeshPolyhedron& outer, const MeshPolyhedron& inner) {
        return contains_by_translation(outer, inner).contained;
      });

  m.def(
      "construct",
      [](const Herisson& h, double dt, double tol) {
        const auto r = continuation_solve(h, config(dt, tol));
        py::dict trace;
        trace["steps_taken"] = r.trace.steps_taken;
        trace["final_residual"] = r.trace.final_residual;
        trace["combinatorial_changes"] = r.trace.combinatorial_changes;
        return py::make_tuple(r.mesh, trace);
      },
      py::arg("herisson"), py::arg("dt") = 0.01, py::arg("tol") = 1e-9,
      "Reconstruct the polyhedron with the given face normals and areas. Returns (mesh, trace).");
  m.def("minkowski_sum", &minkowski_sum, py::arg("p"), py::arg("q"));
  m.def(
      "blaschke_sum", [](const MeshPolyhedron& p, const MeshPolyhedron& q) { return blaschke_sum_bodies(p, q); },
      py::arg("p"), py::arg("q"));

  m.def("brunn_minkowski", [](const MeshPolyhedron& p, const MeshPolyhedron& q) {
    return report_dict(brunn_minkowski_check(p, q));
  });
  m.def("kneser_suss", [](const MeshPolyhedron& p, const MeshPolyhedron& q) {
    return report_dict(kneser_suss_check(p, q));
  });
  m.def("sum_comparison", [](const MeshPolyhedron& p, const MeshPolyhedron& q) {
    return report_dict(sum_comparison_check(p, q));
  });
  m.def("monotonicity", [](const Herisson& k, const Herisson& l) { return report_dict(monotonicity_check(k, l)); });
  m.def(
      "exponent",
      [](const MeshPolyhedron& p, const MeshPolyhedron& q, double a) {
        const auto r = exponent_check(p, q, a);
        return py::make_tuple(report_dict(r.minkowski), report_dict(r.blaschke));
      },
      py::arg("p"), py::arg("q"), py::arg("a"));

  m.def(
      "spherical_residual",
      [](const std::vector<Triple>& vertices, int refinement) {
        SphericalPolygon poly;
        for (const auto& v : vertices) poly.vertices.push_back(Vec3(v[0], v[1], v[2]).normalized());
        return to_triple(spherical_identity_residual(poly, refinement));
      },
      py::arg("vertices"), py::arg("refinement") = 6);

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "blaschke");
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process. Returns (exit_code, stdout, stderr).");
}
