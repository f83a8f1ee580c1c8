#pragma once

#include <utility>
#include <vector>

#include "waf/triple.hpp"

namespace waf {

struct ThresholdOptions {
  double tol_t = 1e-3;
  double t_init = 0.0625;  // first probe; doubled until failure
  double t_max = 8.0;
  SolveOptions solve;
};

struct RayResult {
  double t_star = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};        // (t_ok, t_fail)
  std::vector<std::pair<double, double>> lambda0_curve;  // (t, lambda0), sorted
  int probes = 0;
};

// Largest t with a converged solution of q = t^2 q_hat on the tracked branch
// with lambda0 <= 1, located by doubling probes plus bisection. Probes past
// the wall count as "above" whether they diverge (NoSolutionError) or land on
// lambda0 > 1. Errors when the first probe is already above, or t_max is
// reached with every probe below.
RayResult find_threshold(const SurfaceMesh& mesh, const QuadDiffNormField& q_hat,
                         double tol_t);
RayResult find_threshold(const SurfaceMesh& mesh, const QuadDiffNormField& q_hat,
                         const ThresholdOptions& opts);

// Base polygon mesh with the collar of the marked curve "a1" scaled: on-curve
// edges multiplied by collar_param, transverse edges set to their common
// mean. Marked-curve graph length scales exactly by collar_param. The curve
// family degenerates (pinches) as collar_param -> 0.
SurfaceMesh pinch_family(int genus, double collar_param, int refinement);

// Vertex correspondence from one mesh into another: entry -1 marks vertices
// outside the domain. identity() builds the identity on shared combinatorics.
struct Correspondence {
  std::vector<int> map;

  static Correspondence identity(int num_vertices);
  Correspondence inverse(int target_vertices) const;
};

struct CompactificationDistance {
  double d_dm_proxy = 0.0;
  double d_phi = 0.0;  // at eps = 1, the coarsest sampled scale
  std::vector<std::pair<double, double>> d_eps_samples;  // (eps, d_eps)
  double d_total = 0.0;
  int truncation = 0;
};

// Truncated compactification distance: d_eps = d_dm_proxy + sup over the
// eps-thick part of |e^{2 u2} o Phi - e^{2 u1}|, summed as
// sum_{n=0..N} 2^{-n} d_{1/2^n}. The correspondence must cover every sampled
// thick part; it is evaluated as supplied (no infimum over maps).
CompactificationDistance compact_distance(const MinimalTriple& p,
                                          const MinimalTriple& p2,
                                          const Correspondence& correspondence,
                                          int N = 10);

}  // namespace waf
