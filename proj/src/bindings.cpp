#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waf/classify.hpp"
#include "waf/explore.hpp"
#include "waf/foliation.hpp"
#include "waf/io.hpp"
#include "waf/stability.hpp"
#include "waf/version.hpp"

namespace py = pybind11;
using namespace waf;

PYBIND11_MODULE(_wafcore, m) {
  m.doc() = "Discrete minimal-surface triples: meshes, the conformal-factor "
            "equation, classification, foliations, stability, exploration.";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NoSolutionError>(m, "NoSolutionError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::enum_<SurfaceClass>(m, "SurfaceClass")
      .value("Fuchsian", SurfaceClass::Fuchsian)
      .value("AlmostFuchsian", SurfaceClass::AlmostFuchsian)
      .value("WeaklyAFBoundary", SurfaceClass::WeaklyAFBoundary)
      .value("BeyondWAF", SurfaceClass::BeyondWAF);

  py::enum_<SolutionBranch>(m, "SolutionBranch")
      .value("Upper", SolutionBranch::Upper)
      .value("Unknown", SolutionBranch::Unknown);

  py::class_<ScalarField>(m, "ScalarField")
      .def_readonly("values", &ScalarField::values)
      .def_readonly("mesh_fingerprint", &ScalarField::mesh_fingerprint);

  py::class_<SurfaceMesh>(m, "SurfaceMesh")
      .def_readonly("genus", &SurfaceMesh::genus)
      .def_readonly("refinement_level", &SurfaceMesh::refinement_level)
      .def_readonly("num_vertices", &SurfaceMesh::num_vertices)
      .def_readonly("faces", &SurfaceMesh::faces)
      .def_readonly("edges", &SurfaceMesh::edges)
      .def_readonly("edge_lengths", &SurfaceMesh::edge_lengths)
      .def_readonly("marked_curves", &SurfaceMesh::marked_curves)
      .def_readonly("total_area", &SurfaceMesh::total_area)
      .def("euler_characteristic", &SurfaceMesh::euler_characteristic)
      .def("angle_defects", &SurfaceMesh::angle_defects)
      .def("total_angle_defect", &SurfaceMesh::total_angle_defect)
      .def("marked_curve_length", &SurfaceMesh::marked_curve_length)
      .def("fingerprint", [](const SurfaceMesh& mesh) { return mesh.fingerprint; })
      .def("make_field",
           [](const SurfaceMesh& mesh, const Eigen::VectorXd& v) {
             return mesh.make_field(v);
           })
      .def("__repr__", [](const SurfaceMesh& mesh) {
        return "<SurfaceMesh genus=" + std::to_string(mesh.genus) +
               " refinement=" + std::to_string(mesh.refinement_level) +
               " V=" + std::to_string(mesh.num_vertices) + ">";
      });

  py::class_<QuadDiffNormField>(m, "QuadDiffNormField")
      .def_readonly("values", &QuadDiffNormField::values)
      .def_readonly("zero_set", &QuadDiffNormField::zero_set)
      .def_readonly("note", &QuadDiffNormField::note)
      .def_property_readonly("provenance", [](const QuadDiffNormField& q) {
        return std::string(to_string(q.provenance));
      });

  py::class_<ConformalSolution>(m, "ConformalSolution")
      .def_readonly("u", &ConformalSolution::u)
      .def_readonly("residual_norm", &ConformalSolution::residual_norm)
      .def_readonly("iterations", &ConformalSolution::iterations)
      .def_readonly("branch", &ConformalSolution::branch)
      .def_readonly("converged", &ConformalSolution::converged);

  py::class_<MinimalTriple>(m, "MinimalTriple")
      .def_readonly("mesh", &MinimalTriple::mesh)
      .def_readonly("q", &MinimalTriple::q)
      .def_readonly("solution", &MinimalTriple::solution)
      .def("lambda0", &MinimalTriple::lambda0)
      .def("lambda_field", &MinimalTriple::lambda_field);

  py::class_<CurvatureReport>(m, "CurvatureReport")
      .def_readonly("lambda_field", &CurvatureReport::lambda_field)
      .def_readonly("lambda0", &CurvatureReport::lambda0)
      .def_readonly("argmax_vertex", &CurvatureReport::argmax_vertex)
      .def_readonly("classification", &CurvatureReport::classification)
      .def_readonly("tolerance", &CurvatureReport::tolerance);

  py::class_<GeometricBounds>(m, "GeometricBounds")
      .def_readonly("hausdorff_upper", &GeometricBounds::hausdorff_upper)
      .def_readonly("core_volume_upper", &GeometricBounds::core_volume_upper)
      .def_readonly("qi_constant_upper", &GeometricBounds::qi_constant_upper)
      .def_readonly("genus", &GeometricBounds::genus);

  py::class_<DilatationReport>(m, "DilatationReport")
      .def_readonly("kappa1", &DilatationReport::kappa1)
      .def_readonly("kappa2", &DilatationReport::kappa2)
      .def_readonly("epsilon", &DilatationReport::epsilon)
      .def_readonly("dilatation_upper", &DilatationReport::dilatation_upper);

  py::class_<LeafReport>(m, "LeafReport")
      .def_readonly("t", &LeafReport::t)
      .def_readonly("area", &LeafReport::area)
      .def_readonly("min_distortion", &LeafReport::min_distortion)
      .def_readonly("principal_curvature_range",
                    &LeafReport::principal_curvature_range)
      .def_readonly("convex", &LeafReport::convex);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("bottom_eigenvalue", &StabilityReport::bottom_eigenvalue)
      .def_readonly("eigenfunction", &StabilityReport::eigenfunction)
      .def_readonly("A_norm_sq_field", &StabilityReport::A_norm_sq_field)
      .def_readonly("strictly_stable", &StabilityReport::strictly_stable);

  py::class_<RayResult>(m, "RayResult")
      .def_readonly("t_star", &RayResult::t_star)
      .def_readonly("bracket", &RayResult::bracket)
      .def_readonly("lambda0_curve", &RayResult::lambda0_curve)
      .def_readonly("probes", &RayResult::probes);

  py::class_<Correspondence>(m, "Correspondence")
      .def_readonly("map", &Correspondence::map)
      .def_static("identity", &Correspondence::identity)
      .def("inverse", &Correspondence::inverse);

  py::class_<CompactificationDistance>(m, "CompactificationDistance")
      .def_readonly("d_dm_proxy", &CompactificationDistance::d_dm_proxy)
      .def_readonly("d_phi", &CompactificationDistance::d_phi)
      .def_readonly("d_eps_samples", &CompactificationDistance::d_eps_samples)
      .def_readonly("d_total", &CompactificationDistance::d_total)
      .def_readonly("truncation", &CompactificationDistance::truncation);

  m.def("build_polygon_mesh",
        [](int genus, int refinement) { return build_polygon_mesh(genus, refinement); },
        py::arg("genus"), py::arg("refinement") = 0);
  m.def("refine", &refine, py::arg("mesh"));
  m.def("constant_field", &constant_field, py::arg("mesh"), py::arg("c"));
  m.def("synth_with_zeros", &synth_with_zeros, py::arg("mesh"), py::arg("zeros"),
        py::arg("amplitude"));
  m.def("random_zero_set", &random_zero_set, py::arg("mesh"), py::arg("seed"));
  m.def("scale_ray", &scale_ray, py::arg("q_hat"), py::arg("t"));
  m.def("manufactured_pair", &manufactured_pair, py::arg("mesh"), py::arg("u_exact"));

  py::class_<SmoothProblem>(m, "SmoothProblem")
      .def_readonly("mesh", &SmoothProblem::mesh)
      .def_readonly("q", &SmoothProblem::q)
      .def_readonly("u_exact", &SmoothProblem::u_exact);
  m.def("smooth_radial_problem", &smooth_radial_problem, py::arg("genus"),
        py::arg("refinement"));

  m.def(
      "solve_gauss",
      [](const SurfaceMesh& mesh, const QuadDiffNormField& q, double tolerance,
         int max_iterations) {
        SolveOptions opts;
        opts.tolerance = tolerance;
        opts.max_iterations = max_iterations;
        return solve_gauss(mesh, q, opts);
      },
      py::arg("mesh"), py::arg("q"), py::arg("tolerance") = 1e-10,
      py::arg("max_iterations") = 50);

  m.def(
      "make_triple",
      [](const SurfaceMesh& mesh, const QuadDiffNormField& q, double tolerance,
         int max_iterations) {
        SolveOptions opts;
        opts.tolerance = tolerance;
        opts.max_iterations = max_iterations;
        return make_triple(mesh, q, opts);
      },
      py::arg("mesh"), py::arg("q"), py::arg("tolerance") = 1e-10,
      py::arg("max_iterations") = 50);

  m.def(
      "curvature_report",
      [](const MinimalTriple& triple, double tolerance) {
        return curvature_report(triple, tolerance);
      },
      py::arg("triple"), py::arg("tolerance") = kClassifyTolerance);
  m.def("geometric_bounds", &geometric_bounds, py::arg("lambda0"), py::arg("genus"));
  m.def("dilatation_bound", &dilatation_bound, py::arg("kappa1"), py::arg("kappa2"));
  m.def("classification_name",
        [](SurfaceClass c) { return std::string(to_string(c)); });

  m.def("leaf_report", &leaf_report, py::arg("triple"), py::arg("t"),
        py::arg("tolerance") = 1e-3);
  m.def("slab_volume", &slab_volume, py::arg("triple"), py::arg("t1"),
        py::arg("t2"), py::arg("tolerance") = 1e-3);
  m.def("slab_volume_closed_form", &slab_volume_closed_form, py::arg("triple"),
        py::arg("t1"), py::arg("t2"));
  m.def("core_volume_bound", &core_volume_bound, py::arg("lambda0"),
        py::arg("genus"));

  m.def(
      "stability_report",
      [](const MinimalTriple& triple) { return stability_report(triple); },
      py::arg("triple"));

  m.def(
      "find_threshold",
      [](const SurfaceMesh& mesh, const QuadDiffNormField& q_hat, double tol_t) {
        return find_threshold(mesh, q_hat, tol_t);
      },
      py::arg("mesh"), py::arg("q_hat"), py::arg("tol_t") = 1e-3);
  m.def("pinch_family", &pinch_family, py::arg("genus"), py::arg("collar_param"),
        py::arg("refinement") = 0);
  m.def("compact_distance", &compact_distance, py::arg("p"), py::arg("p2"),
        py::arg("correspondence"), py::arg("N") = 10);
  m.def("thick_part", &thick_part, py::arg("mesh"), py::arg("conformal"),
        py::arg("eps"));
  m.def(
      "essential_loop_lengths",
      [](const SurfaceMesh& mesh, double cap) {
        return essential_loop_lengths(mesh, nullptr, cap);
      },
      py::arg("mesh"), py::arg("cap"));

  m.def("save_triple", [](const std::string& path, const MinimalTriple& t) {
    save_json_file(path, triple_to_json(t));
  });
  m.def("load_triple",
        [](const std::string& path) { return triple_from_json(load_json_file(path)); });
  m.def("save_mesh", [](const std::string& path, const SurfaceMesh& mesh) {
    save_json_file(path, mesh_to_json(mesh));
  });
  m.def("load_mesh",
        [](const std::string& path) { return mesh_from_json(load_json_file(path)); });
}
