#include "waf/explore.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "waf/classify.hpp"

namespace waf {

namespace {

struct ProbeOutcome {
  bool below = false;           // converged with lambda0 <= 1
  double lambda0 = -1.0;        // valid when converged
  bool converged = false;
};

ProbeOutcome probe(const SurfaceMesh& mesh, const QuadDiffNormField& q_hat,
                   double t, SolveOptions& opts) {
  ProbeOutcome out;
  try {
    ConformalSolution sol = solve_gauss(mesh, scale_ray(q_hat, t), opts);
    out.converged = true;
    out.lambda0 = (q_hat.values.array().sqrt() * t *
                   (-2.0 * sol.u.values.array()).exp())
                      .maxCoeff();
    out.below = out.lambda0 <= 1.0;
    if (out.below) opts.initial_guess = sol.u.values;  // warm start upward
  } catch (const NoSolutionError&) {
    out.converged = false;
  }
  return out;
}

}  // namespace

RayResult find_threshold(const SurfaceMesh& mesh, const QuadDiffNormField& q_hat,
                         double tol_t) {
  ThresholdOptions opts;
  opts.tol_t = tol_t;
  return find_threshold(mesh, q_hat, opts);
}

RayResult find_threshold(const SurfaceMesh& mesh, const QuadDiffNormField& q_hat,
                         const ThresholdOptions& opts) {
  q_hat.validate(mesh);
  if (!(q_hat.values.maxCoeff() > 0.0))
    throw ValidationError("threshold search needs q_hat not identically zero");
  if (!(opts.tol_t > 0.0)) throw ValidationError("tol_t must be > 0");
  if (!(opts.t_init > 0.0) || !(opts.t_max > opts.t_init))
    throw ValidationError("need 0 < t_init < t_max");

  RayResult res;
  SolveOptions solve_opts = opts.solve;
  solve_opts.max_iterations = std::max(solve_opts.max_iterations, 80);

  double lo = -1.0, hi = -1.0;
  for (double t = opts.t_init; t <= opts.t_max; t *= 2.0) {
    const ProbeOutcome p = probe(mesh, q_hat, t, solve_opts);
    ++res.probes;
    if (p.converged) res.lambda0_curve.emplace_back(t, p.lambda0);
    if (p.below) {
      lo = t;
    } else {
      hi = t;
      break;
    }
  }
  if (lo < 0.0) {
    std::ostringstream os;
    os << "threshold below the first probe t_init = " << opts.t_init
       << "; pass a smaller t_init";
    throw ValidationError(os.str());
  }
  if (hi < 0.0) {
    std::ostringstream os;
    os << "no threshold found: every probe up to t_max = " << opts.t_max
       << " stays below the wall";
    throw ValidationError(os.str());
  }

  while (hi - lo > opts.tol_t) {
    const double mid = 0.5 * (lo + hi);
    const ProbeOutcome p = probe(mesh, q_hat, mid, solve_opts);
    ++res.probes;
    if (p.converged) res.lambda0_curve.emplace_back(mid, p.lambda0);
    (p.below ? lo : hi) = mid;
  }

  res.bracket = {lo, hi};
  res.t_star = 0.5 * (lo + hi);
  std::sort(res.lambda0_curve.begin(), res.lambda0_curve.end());
  return res;
}

SurfaceMesh pinch_family(int genus, double collar_param, int refinement) {
  if (!(collar_param > 0.0) || collar_param > 1.0)
    throw ValidationError("collar_param must lie in (0, 1], got " +
                          std::to_string(collar_param));
  SurfaceMesh mesh = build_polygon_mesh(genus, refinement);
  if (collar_param == 1.0) return mesh;

  const auto& cycle = mesh.marked_curves.at("a1");
  std::vector<char> on_curve(mesh.num_vertices, 0);
  for (int v : cycle) on_curve[v] = 1;
  std::set<std::pair<int, int>> curve_edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
    curve_edges.insert(std::minmax(a, b));
  }

  for (const auto& f : mesh.faces) {
    if (on_curve[f[0]] && on_curve[f[1]] && on_curve[f[2]])
      throw NumericalError("pinch: face with three collar vertices");
  }

  // Transverse edges (exactly one endpoint on the curve) blend toward their
  // mean as the collar tightens: lengths c*orig + (1-c)*mean. Within each
  // triangle that straddles the curve this preserves the triangle
  // inequality's relative margins down to arbitrarily small c.
  double mean = 0.0;
  int count = 0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [a, b] = mesh.edges[e];
    if (on_curve[a] != on_curve[b]) {
      mean += mesh.edge_lengths[e];
      ++count;
    }
  }
  if (count == 0) throw NumericalError("pinch: no transverse edges found");
  mean /= count;

  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [a, b] = mesh.edges[e];
    if (on_curve[a] && on_curve[b]) {
      if (!curve_edges.count(std::minmax(a, b)))
        throw NumericalError("pinch: chord between collar vertices");
      mesh.edge_lengths[e] *= collar_param;
    } else if (on_curve[a] != on_curve[b]) {
      mesh.edge_lengths[e] =
          collar_param * mesh.edge_lengths[e] + (1.0 - collar_param) * mean;
    }
  }

  mesh.finalize();
  return mesh;
}

Correspondence Correspondence::identity(int num_vertices) {
  Correspondence c;
  c.map.resize(num_vertices);
  for (int v = 0; v < num_vertices; ++v) c.map[v] = v;
  return c;
}

Correspondence Correspondence::inverse(int target_vertices) const {
  Correspondence inv;
  inv.map.assign(target_vertices, -1);
  for (std::size_t v = 0; v < map.size(); ++v)
    if (map[v] >= 0) {
      if (map[v] >= target_vertices)
        throw ValidationError("correspondence image out of range");
      if (inv.map[map[v]] >= 0)
        throw ValidationError("correspondence not injective; cannot invert");
      inv.map[map[v]] = static_cast<int>(v);
    }
  return inv;
}

CompactificationDistance compact_distance(const MinimalTriple& p,
                                          const MinimalTriple& p2,
                                          const Correspondence& correspondence,
                                          int N) {
  p.validate();
  p2.validate();
  if (N < 0) throw ValidationError("truncation N must be >= 0");
  const int V1 = p.mesh.num_vertices, V2 = p2.mesh.num_vertices;
  if (static_cast<int>(correspondence.map.size()) != V1)
    throw ValidationError("correspondence size != vertex count of the first triple");
  for (int img : correspondence.map)
    if (img >= V2)
      throw ValidationError("correspondence image out of range");

  const Eigen::ArrayXd e2u1 = (2.0 * p.solution.u.values.array()).exp();
  const Eigen::ArrayXd e2u2 = (2.0 * p2.solution.u.values.array()).exp();

  // Base-metric proxy: marked-length differences plus the sup edge-length
  // difference over edges carried to edges.
  double d_dm = 0.0;
  for (const auto& [name, cyc] : p.mesh.marked_curves) {
    if (p2.mesh.marked_curves.count(name))
      d_dm += std::abs(p.mesh.marked_curve_length(name) -
                       p2.mesh.marked_curve_length(name));
  }
  double edge_sup = 0.0;
  for (std::size_t e = 0; e < p.mesh.edges.size(); ++e) {
    const auto [a, b] = p.mesh.edges[e];
    const int ia = correspondence.map[a], ib = correspondence.map[b];
    if (ia < 0 || ib < 0) continue;
    const int e2 = p2.mesh.edge_id(ia, ib);
    if (e2 < 0) continue;
    edge_sup = std::max(edge_sup,
                        std::abs(p.mesh.edge_lengths[e] - p2.mesh.edge_lengths[e2]));
  }
  d_dm += edge_sup;

  // Loop lengths in p's induced metric, shared by every eps (only the
  // threshold depends on eps).
  const Eigen::VectorXd lens =
      essential_loop_lengths(p.mesh, &p.solution.u.values, 2.0);

  CompactificationDistance out;
  out.truncation = N;
  out.d_dm_proxy = d_dm;
  double weight = 1.0;
  for (int n = 0; n <= N; ++n, weight *= 0.5) {
    const double eps = weight;  // 1/2^n
    double d_phi = 0.0;
    for (int v = 0; v < V1; ++v) {
      if (lens[v] < 2.0 * eps) continue;  // thin at this scale
      const int img = correspondence.map[v];
      if (img < 0) {
        std::ostringstream os;
        os << "correspondence does not cover the eps=" << eps
           << " thick part (vertex " << v << ")";
        throw ValidationError(os.str());
      }
      d_phi = std::max(d_phi, std::abs(e2u2[img] - e2u1[v]));
    }
    if (n == 0) out.d_phi = d_phi;
    const double d_eps = d_dm + d_phi;
    out.d_eps_samples.emplace_back(eps, d_eps);
    out.d_total += weight * d_eps;
  }
  return out;
}

}  // namespace waf
