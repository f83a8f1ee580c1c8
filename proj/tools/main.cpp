// wafspace: command-line surface over the library. Subcommands read/write the
// JSON formats from io.hpp; inputs come from flags or stdin, the primary
// document goes to stdout, artifacts go to --out, and every successful run
// appends a record to the journal.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "waf/classify.hpp"
#include "waf/explore.hpp"
#include "waf/foliation.hpp"
#include "waf/io.hpp"
#include "waf/journal.hpp"
#include "waf/stability.hpp"
#include "waf/version.hpp"

using namespace waf;

namespace {

struct Common {
  std::string out;
  std::string journal_flag;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Directory for report artifacts");
  cmd->add_option("--journal", c.journal_flag,
                  "Journal path (default: $WAFSPACE_JOURNAL, then "
                  "<out>/journal.jsonl, then ./journal.jsonl)");
}

Json read_stdin_json() {
  Json j;
  try {
    std::cin >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("stdin is not valid JSON: ") + e.what());
  }
  return j;
}

// Load from `path`, or stdin when empty. Hash every consumed document.
Json load_doc(const std::string& path, std::vector<std::string>& hashes) {
  Json j = path.empty() ? read_stdin_json() : load_json_file(path);
  hashes.push_back(json_content_hash(j));
  return j;
}

// q specs: const:VAL | zeros:AMP[:SEED] | <path to q JSON>.
QuadDiffNormField q_from_spec(const std::string& spec, const SurfaceMesh& mesh,
                              std::vector<std::string>& hashes) {
  const auto parse_num = [&](const std::string& s, const char* what) {
    try {
      std::size_t pos;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad ") + what + " in q spec '" + spec + "'");
    }
  };
  if (spec.rfind("const:", 0) == 0)
    return constant_field(mesh, parse_num(spec.substr(6), "constant"));
  if (spec.rfind("zeros:", 0) == 0) {
    const std::string rest = spec.substr(6);
    const auto colon = rest.find(':');
    const double amp = parse_num(rest.substr(0, colon), "amplitude");
    std::uint64_t seed = 1;
    if (colon != std::string::npos)
      seed = static_cast<std::uint64_t>(parse_num(rest.substr(colon + 1), "seed"));
    return synth_with_zeros(mesh, random_zero_set(mesh, seed), amp);
  }
  return qfield_from_json(load_doc(spec, hashes), mesh);
}

Json finite_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
}

// One successful run: primary document to stdout, artifacts to --out,
// RunRecord to the journal. `artifacts` pairs filename -> document; `csvs`
// pairs filename -> text.
struct RunSink {
  const Common& common;
  std::string command;
  Json parameters = Json::object();
  std::vector<std::string> input_hashes;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void finish(const Json& primary, const Json& outputs,
              const std::vector<std::pair<std::string, Json>>& artifacts = {},
              const std::vector<std::pair<std::string, std::string>>& csvs = {}) {
    if (!common.out.empty()) {
      std::filesystem::create_directories(common.out);
      for (const auto& [name, doc] : artifacts)
        save_json_file(common.out + "/" + name, doc);
      for (const auto& [name, text] : csvs)
        write_text_file(common.out + "/" + name, text);
    }
    std::cout << primary.dump(2) << "\n";

    RunRecord rec;
    rec.command = command;
    rec.input_hashes = input_hashes;
    rec.parameters = parameters;
    rec.outputs = outputs;
    rec.timestamp = iso8601_utc_now();
    rec.tool_version = kVersion;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    append_record(resolve_journal_path(common.journal_flag, common.out), rec);
  }
};

Json mesh_summary(const SurfaceMesh& mesh) {
  Json s;
  s["genus"] = mesh.genus;
  s["refinement_level"] = mesh.refinement_level;
  s["num_vertices"] = mesh.num_vertices;
  s["num_edges"] = mesh.edges.size();
  s["num_faces"] = mesh.faces.size();
  s["euler_characteristic"] = mesh.euler_characteristic();
  s["total_area"] = mesh.total_area;
  Json curves = Json::object();
  for (const auto& [name, cyc] : mesh.marked_curves)
    curves[name] = mesh.marked_curve_length(name);
  s["marked_curve_lengths"] = std::move(curves);
  return s;
}

Json bounds_block(double lambda0, int genus) {
  const GeometricBounds b = geometric_bounds(lambda0, genus);
  Json j;
  j["hausdorff_upper"] = finite_or_inf(b.hausdorff_upper);
  j["core_volume_upper"] = finite_or_inf(b.core_volume_upper);
  j["qi_constant_upper"] = finite_or_inf(b.qi_constant_upper);
  return j;
}

MinimalTriple triple_from(const std::string& path, std::vector<std::string>& hashes) {
  return triple_from_json(load_doc(path, hashes));
}

double default_leaf_extent(const MinimalTriple& triple) {
  const double l0 = triple.lambda0();
  if (l0 >= 1.0)
    throw FoliationUndefinedError(
        "lambda0 = " + std::to_string(l0) +
        " >= 1: no default foliation window, pass --t-min/--t-max");
  return std::atanh(l0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-surface triples on closed hyperbolic surfaces: solve "
               "the conformal-factor equation, classify, foliate, explore."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "",
                 "INI config; sections per subcommand, flags win");

  // --- gen-mesh --------------------------------------------------------------
  auto* gen = app.add_subcommand("gen-mesh", "Build a closed genus-g mesh");
  Common gen_c;
  int gen_genus = 2, gen_refine = 0;
  gen->add_option("-g,--genus", gen_genus, "Genus (>= 2)")->required();
  gen->add_option("-r,--refinement", gen_refine, "Extra 1->4 rounds");
  add_common(gen, gen_c);
  gen->callback([&] {
    RunSink sink{gen_c, "gen-mesh"};
    sink.parameters = {{"genus", gen_genus}, {"refinement", gen_refine}};
    const SurfaceMesh mesh = build_polygon_mesh(gen_genus, gen_refine);
    const Json doc = mesh_to_json(mesh);
    sink.finish(doc, mesh_summary(mesh), {{"mesh.json", doc}});
  });

  // --- solve -----------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve Delta u = e^{2u} + q e^{-2u} - 1");
  Common solve_c;
  std::string solve_mesh_path, solve_q = "const:0";
  double solve_tol = 1e-10;
  int solve_iters = 80;
  solve->add_option("--mesh", solve_mesh_path, "Mesh JSON (default: stdin)");
  solve->add_option("-q,--q", solve_q, "const:VAL | zeros:AMP[:SEED] | q-file")
      ->required();
  solve->add_option("--tol", solve_tol, "Residual sup-norm tolerance");
  solve->add_option("--max-iter", solve_iters, "Newton iteration budget");
  add_common(solve, solve_c);
  solve->callback([&] {
    RunSink sink{solve_c, "solve"};
    sink.parameters = {{"q", solve_q}, {"tol", solve_tol}, {"max_iter", solve_iters}};
    const SurfaceMesh mesh = mesh_from_json(load_doc(solve_mesh_path, sink.input_hashes));
    QuadDiffNormField q = q_from_spec(solve_q, mesh, sink.input_hashes);
    SolveOptions opts;
    opts.tolerance = solve_tol;
    opts.max_iterations = solve_iters;
    MinimalTriple triple = make_triple(mesh, std::move(q), opts);
    Json outputs;
    outputs["converged"] = triple.solution.converged;
    outputs["iterations"] = triple.solution.iterations;
    outputs["residual_norm"] = triple.solution.residual_norm;
    outputs["branch"] =
        triple.solution.branch == SolutionBranch::Upper ? "upper" : "unknown";
    outputs["u_min"] = triple.solution.u.values.minCoeff();
    outputs["u_max"] = triple.solution.u.values.maxCoeff();
    outputs["lambda0"] = triple.lambda0();
    const Json doc = triple_to_json(triple);
    sink.finish(doc, outputs, {{"triple.json", doc}});
  });

  // --- classify ----------------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "Principal-curvature classification");
  Common classify_c;
  std::string classify_triple;
  double classify_tol = kClassifyTolerance;
  classify->add_option("--triple", classify_triple, "Triple JSON (default: stdin)");
  classify->add_option("--tolerance", classify_tol, "Boundary-band tolerance");
  add_common(classify, classify_c);
  classify->callback([&] {
    RunSink sink{classify_c, "classify"};
    sink.parameters = {{"tolerance", classify_tol}};
    const MinimalTriple triple = triple_from(classify_triple, sink.input_hashes);
    const CurvatureReport rep = curvature_report(triple, classify_tol);
    Json outputs;
    outputs["lambda0"] = rep.lambda0;
    outputs["argmax_vertex"] = rep.argmax_vertex;
    outputs["class"] = to_string(rep.classification);
    outputs["tolerance"] = rep.tolerance;
    sink.finish(outputs, outputs, {{"classify.json", outputs}});
  });

  // --- bounds ------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Closed-form geometric bounds");
  Common bounds_c;
  std::string bounds_triple;
  double bounds_lambda0 = -1.0, bounds_k1 = 0.0, bounds_k2 = 0.0;
  int bounds_genus = 2;
  bool bounds_have_kappa = false;
  bounds->add_option("--triple", bounds_triple, "Triple JSON (default: stdin)");
  auto* l0_opt = bounds->add_option("--lambda0", bounds_lambda0,
                                    "Skip the triple, bound this lambda0");
  bounds->add_option("--genus", bounds_genus, "Genus for --lambda0 mode");
  auto* k1_opt = bounds->add_option("--kappa1", bounds_k1,
                                    "Principal curvature for the dilatation bound");
  auto* k2_opt =
      bounds->add_option("--kappa2", bounds_k2, "Second principal curvature");
  k1_opt->needs(k2_opt);
  k2_opt->needs(k1_opt);
  add_common(bounds, bounds_c);
  bounds->callback([&] {
    RunSink sink{bounds_c, "bounds"};
    bounds_have_kappa = k1_opt->count() > 0;
    double l0;
    int genus;
    if (l0_opt->count() > 0) {
      l0 = bounds_lambda0;
      genus = bounds_genus;
      sink.parameters = {{"lambda0", l0}, {"genus", genus}};
    } else {
      const MinimalTriple triple = triple_from(bounds_triple, sink.input_hashes);
      l0 = triple.lambda0();
      genus = triple.mesh.genus;
    }
    Json outputs;
    outputs["lambda0"] = l0;
    outputs["genus"] = genus;
    outputs["bounds"] = bounds_block(l0, genus);
    if (bounds_have_kappa) {
      sink.parameters["kappa1"] = bounds_k1;
      sink.parameters["kappa2"] = bounds_k2;
      const DilatationReport d = dilatation_bound(bounds_k1, bounds_k2);
      outputs["dilatation"] = {{"epsilon", d.epsilon},
                               {"dilatation_upper", d.dilatation_upper}};
    }
    sink.finish(outputs, outputs, {{"bounds.json", outputs}});
  });

  // --- foliation -----------------------------------------------------------------
  auto* foli = app.add_subcommand("foliation", "Sample equidistant leaves");
  Common foli_c;
  std::string foli_triple;
  double foli_tmin = 0.0, foli_tmax = 0.0;
  int foli_samples = 33;
  auto* foli_tmin_opt =
      foli->add_option("--t-min", foli_tmin, "Window start (default -artanh l0)");
  auto* foli_tmax_opt =
      foli->add_option("--t-max", foli_tmax, "Window end (default +artanh l0)");
  foli->add_option("--triple", foli_triple, "Triple JSON (default: stdin)");
  foli->add_option("--samples", foli_samples, "Sample count (>= 2)");
  add_common(foli, foli_c);
  foli->callback([&] {
    RunSink sink{foli_c, "foliation"};
    const MinimalTriple triple = triple_from(foli_triple, sink.input_hashes);
    if (foli_tmin_opt->count() == 0 && foli_tmax_opt->count() == 0) {
      foli_tmax = default_leaf_extent(triple);
      foli_tmin = -foli_tmax;
    }
    sink.parameters = {{"t_min", foli_tmin},
                       {"t_max", foli_tmax},
                       {"samples", foli_samples}};
    auto shared = std::make_shared<MinimalTriple>(triple);
    const FoliationModel model = make_foliation(shared, foli_tmin, foli_tmax);
    const std::vector<LeafReport> leaves = model.sample(foli_samples);

    Json outputs, rows = Json::array();
    std::string csv = "t,area,min_distortion,convex\n";
    bool all_convex = true;
    for (const LeafReport& leaf : leaves) {
      rows.push_back({{"t", leaf.t},
                      {"area", leaf.area},
                      {"min_distortion", leaf.min_distortion},
                      {"convex", leaf.convex}});
      csv += csv_num(leaf.t) + "," + csv_num(leaf.area) + "," +
             csv_num(leaf.min_distortion) + "," + (leaf.convex ? "1" : "0") + "\n";
      all_convex = all_convex && leaf.convex;
    }
    outputs["t_min"] = foli_tmin;
    outputs["t_max"] = foli_tmax;
    outputs["lambda0"] = triple.lambda0();
    outputs["all_leaves_convex"] = all_convex;
    outputs["samples"] = std::move(rows);
    sink.finish(outputs, outputs, {{"foliation.json", outputs}},
                {{"foliation.csv", csv}});
  });

  // --- slab ------------------------------------------------------------------
  auto* slab = app.add_subcommand("slab", "Slab volume between two leaves");
  Common slab_c;
  std::string slab_triple;
  double slab_t1 = 0.0, slab_t2 = 0.0;
  auto* slab_t1_opt = slab->add_option("--t1", slab_t1, "Lower leaf (default -artanh l0)");
  auto* slab_t2_opt = slab->add_option("--t2", slab_t2, "Upper leaf (default +artanh l0)");
  slab->add_option("--triple", slab_triple, "Triple JSON (default: stdin)");
  add_common(slab, slab_c);
  slab->callback([&] {
    RunSink sink{slab_c, "slab"};
    const MinimalTriple triple = triple_from(slab_triple, sink.input_hashes);
    if (slab_t1_opt->count() == 0 && slab_t2_opt->count() == 0) {
      slab_t2 = default_leaf_extent(triple);
      slab_t1 = -slab_t2;
    }
    sink.parameters = {{"t1", slab_t1}, {"t2", slab_t2}};
    const double l0 = triple.lambda0();
    Json outputs;
    outputs["t1"] = slab_t1;
    outputs["t2"] = slab_t2;
    outputs["lambda0"] = l0;
    outputs["volume_quadrature"] = slab_volume(triple, slab_t1, slab_t2);
    outputs["volume_closed_form"] = slab_volume_closed_form(triple, slab_t1, slab_t2);
    outputs["core_volume_bound"] = finite_or_inf(core_volume_bound(l0, triple.mesh.genus));
    sink.finish(outputs, outputs, {{"slab.json", outputs}});
  });

  // --- spectrum ---------------------------------------------------------------
  auto* spec = app.add_subcommand("spectrum", "Bottom of the stability spectrum");
  Common spec_c;
  std::string spec_triple;
  spec->add_option("--triple", spec_triple, "Triple JSON (default: stdin)");
  add_common(spec, spec_c);
  spec->callback([&] {
    RunSink sink{spec_c, "spectrum"};
    const MinimalTriple triple = triple_from(spec_triple, sink.input_hashes);
    const StabilityReport rep = stability_report(triple);
    Json outputs;
    outputs["bottom_eigenvalue"] = rep.bottom_eigenvalue;
    outputs["strictly_stable"] = rep.strictly_stable;
    outputs["A_norm_sq_max"] = rep.A_norm_sq_field.values.maxCoeff();
    outputs["eigenfunction_min"] = rep.eigenfunction.values.minCoeff();
    outputs["eigenfunction_max"] = rep.eigenfunction.values.maxCoeff();
    sink.finish(outputs, outputs,
                {{"spectrum.json", outputs},
                 {"eigenfunction.json", field_to_json(rep.eigenfunction)}});
  });

  // --- ray ---------------------------------------------------------------------
  auto* ray = app.add_subcommand("ray", "Threshold t* along the ray q = t^2 q_hat");
  Common ray_c;
  std::string ray_mesh_path, ray_qhat;
  double ray_tol = 1e-3, ray_tinit = 0.0625, ray_tmax = 8.0;
  ray->add_option("--mesh", ray_mesh_path, "Mesh JSON (default: stdin)");
  ray->add_option("--qhat", ray_qhat, "const:VAL | zeros:AMP[:SEED] | q-file")
      ->required();
  ray->add_option("--tol", ray_tol, "Bracket width tolerance on t");
  ray->add_option("--t-init", ray_tinit, "First probe");
  ray->add_option("--t-max", ray_tmax, "Probe ceiling");
  add_common(ray, ray_c);
  ray->callback([&] {
    RunSink sink{ray_c, "ray"};
    sink.parameters = {{"qhat", ray_qhat},
                       {"tol", ray_tol},
                       {"t_init", ray_tinit},
                       {"t_max", ray_tmax}};
    const SurfaceMesh mesh = mesh_from_json(load_doc(ray_mesh_path, sink.input_hashes));
    const QuadDiffNormField q_hat = q_from_spec(ray_qhat, mesh, sink.input_hashes);
    ThresholdOptions opts;
    opts.tol_t = ray_tol;
    opts.t_init = ray_tinit;
    opts.t_max = ray_tmax;
    const RayResult res = find_threshold(mesh, q_hat, opts);

    Json outputs;
    outputs["t_star"] = res.t_star;
    outputs["bracket"] = {res.bracket.first, res.bracket.second};
    outputs["probes"] = res.probes;
    Json curve = Json::array();
    std::string csv =
        "t,lambda0,class,hausdorff_upper,core_volume_upper,qi_constant_upper\n";
    for (const auto& [t, l0] : res.lambda0_curve) {
      curve.push_back({t, l0});
      SurfaceClass cls;
      if (l0 <= kClassifyTolerance)
        cls = SurfaceClass::Fuchsian;
      else if (l0 < 1.0 - kClassifyTolerance)
        cls = SurfaceClass::AlmostFuchsian;
      else if (l0 <= 1.0 + kClassifyTolerance)
        cls = SurfaceClass::WeaklyAFBoundary;
      else
        cls = SurfaceClass::BeyondWAF;
      const GeometricBounds b = geometric_bounds(l0, mesh.genus);
      csv += csv_num(t) + "," + csv_num(l0) + "," + to_string(cls) + "," +
             csv_num(b.hausdorff_upper) + "," + csv_num(b.core_volume_upper) +
             "," + csv_num(b.qi_constant_upper) + "\n";
    }
    outputs["lambda0_curve"] = std::move(curve);
    sink.finish(outputs, outputs, {{"ray.json", outputs}}, {{"ray.csv", csv}});
  });

  // --- pinch -------------------------------------------------------------------
  auto* pinch = app.add_subcommand("pinch", "Collar-scaled mesh along the pinching family");
  Common pinch_c;
  int pinch_genus = 2, pinch_refine = 0;
  double pinch_collar = 1.0;
  pinch->add_option("-g,--genus", pinch_genus, "Genus (>= 2)");
  pinch->add_option("--collar", pinch_collar, "Collar parameter in (0, 1]")->required();
  pinch->add_option("-r,--refinement", pinch_refine, "Extra 1->4 rounds");
  add_common(pinch, pinch_c);
  pinch->callback([&] {
    RunSink sink{pinch_c, "pinch"};
    sink.parameters = {{"genus", pinch_genus},
                       {"collar", pinch_collar},
                       {"refinement", pinch_refine}};
    const SurfaceMesh mesh = pinch_family(pinch_genus, pinch_collar, pinch_refine);
    const Json doc = mesh_to_json(mesh);
    sink.finish(doc, mesh_summary(mesh), {{"mesh.json", doc}});
  });

  // --- distance ----------------------------------------------------------------
  auto* dist = app.add_subcommand("distance", "Truncated compactification distance");
  Common dist_c;
  std::string dist_a, dist_b, dist_map;
  int dist_n = 10;
  dist->add_option("--a", dist_a, "First triple JSON")->required();
  dist->add_option("--b", dist_b, "Second triple JSON")->required();
  dist->add_option("--map", dist_map, "Correspondence JSON (default: identity)");
  dist->add_option("--N", dist_n, "Truncation order");
  add_common(dist, dist_c);
  dist->callback([&] {
    RunSink sink{dist_c, "distance"};
    sink.parameters = {{"N", dist_n}};
    const MinimalTriple a = triple_from(dist_a, sink.input_hashes);
    const MinimalTriple b = triple_from(dist_b, sink.input_hashes);
    Correspondence phi;
    if (dist_map.empty())
      phi = Correspondence::identity(a.mesh.num_vertices);
    else
      phi = correspondence_from_json(load_doc(dist_map, sink.input_hashes),
                                     a.mesh.num_vertices);
    const CompactificationDistance d = compact_distance(a, b, phi, dist_n);
    Json outputs;
    outputs["d_dm_proxy"] = d.d_dm_proxy;
    outputs["d_phi"] = d.d_phi;
    outputs["d_total"] = d.d_total;
    outputs["truncation"] = d.truncation;
    Json samples = Json::array();
    for (const auto& [eps, val] : d.d_eps_samples) samples.push_back({eps, val});
    outputs["d_eps_samples"] = std::move(samples);
    sink.finish(outputs, outputs, {{"distance.json", outputs}});
  });

  // --- mms -----------------------------------------------------------------------
  auto* mms = app.add_subcommand("mms", "Manufactured-solution refinement study");
  Common mms_c;
  int mms_genus = 2, mms_lo = 1, mms_hi = 3;
  mms->add_option("-g,--genus", mms_genus, "Genus (>= 2)");
  mms->add_option("--min-level", mms_lo, "First refinement level");
  mms->add_option("--max-level", mms_hi, "Last refinement level");
  add_common(mms, mms_c);
  mms->callback([&] {
    RunSink sink{mms_c, "mms"};
    sink.parameters = {{"genus", mms_genus},
                       {"min_level", mms_lo},
                       {"max_level", mms_hi}};
    if (mms_lo < 0 || mms_hi < mms_lo)
      throw ValidationError("need 0 <= min-level <= max-level");
    Json levels = Json::array();
    std::string csv = "refinement,vertices,linf_error,ratio\n";
    double prev = -1.0;
    Json ratios = Json::array();
    for (int r = mms_lo; r <= mms_hi; ++r) {
      const SmoothProblem sp = smooth_radial_problem(mms_genus, r);
      const ConformalSolution sol = solve_gauss(sp.mesh, sp.q);
      const double err =
          (sol.u.values - sp.u_exact.values).cwiseAbs().maxCoeff();
      levels.push_back({{"refinement", r},
                        {"vertices", sp.mesh.num_vertices},
                        {"linf_error", err}});
      csv += std::to_string(r) + "," + std::to_string(sp.mesh.num_vertices) +
             "," + csv_num(err) + ",";
      if (prev > 0.0) {
        ratios.push_back(prev / err);
        csv += csv_num(prev / err);
      }
      csv += "\n";
      prev = err;
    }
    Json outputs;
    outputs["levels"] = std::move(levels);
    outputs["ratios"] = std::move(ratios);
    sink.finish(outputs, outputs, {{"mms.json", outputs}}, {{"mms.csv", csv}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const NoSolutionError& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
