#include "waf/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "waf/hyperbolic.hpp"
#include "waf/numerics.hpp"

namespace waf {

const char* to_string(FieldProvenance p) {
  switch (p) {
    case FieldProvenance::Constant: return "constant";
    case FieldProvenance::Manufactured: return "manufactured";
    case FieldProvenance::PrescribedZeros: return "prescribed-zeros";
    case FieldProvenance::External: return "external";
  }
  return "external";
}

FieldProvenance provenance_from_string(const std::string& s) {
  if (s == "constant") return FieldProvenance::Constant;
  if (s == "manufactured") return FieldProvenance::Manufactured;
  if (s == "prescribed-zeros") return FieldProvenance::PrescribedZeros;
  if (s == "external") return FieldProvenance::External;
  throw ValidationError("unknown field provenance '" + s + "'");
}

void QuadDiffNormField::validate(const SurfaceMesh& mesh) const {
  if (values.size() != mesh.num_vertices)
    throw ValidationError("q field size " + std::to_string(values.size()) +
                          " != vertex count " + std::to_string(mesh.num_vertices));
  if (mesh_fingerprint != mesh.fingerprint)
    throw ValidationError("q field bound to a different mesh (fingerprint mismatch)");
  if (!values.allFinite()) throw ValidationError("q field has nonfinite values");
  for (int v = 0; v < values.size(); ++v)
    if (values[v] < 0.0)
      throw ValidationError("q field negative at vertex " + std::to_string(v) +
                            " (" + std::to_string(values[v]) + ")");
  if (provenance == FieldProvenance::PrescribedZeros) {
    int total = 0;
    for (auto [v, m] : zero_set) {
      if (v < 0 || v >= mesh.num_vertices)
        throw ValidationError("zero set vertex out of range");
      if (m < 1) throw ValidationError("zero multiplicity must be >= 1");
      total += m;
    }
    if (total != 4 * mesh.genus - 4)
      throw ValidationError("zero multiplicities sum to " + std::to_string(total) +
                            ", expected 4g-4 = " + std::to_string(4 * mesh.genus - 4));
  }
}

QuadDiffNormField constant_field(const SurfaceMesh& mesh, double c) {
  if (c < 0.0)
    throw ValidationError("constant field requires c >= 0, got " + std::to_string(c));
  QuadDiffNormField q;
  q.values = Eigen::VectorXd::Constant(mesh.num_vertices, c);
  q.mesh_fingerprint = mesh.fingerprint;
  q.provenance = FieldProvenance::Constant;
  q.note = "c=" + std::to_string(c);
  return q;
}

QuadDiffNormField manufactured_pair(const SurfaceMesh& mesh,
                                    const ScalarField& u_exact) {
  mesh.check_field(u_exact, "manufactured u_exact");
  const LinearOperatorHandle lap = laplacian(mesh);
  const Eigen::ArrayXd u = u_exact.values.array();
  const Eigen::ArrayXd e2u = (2.0 * u).exp();
  const Eigen::ArrayXd lap_u = lap.apply(u_exact.values).array();
  Eigen::VectorXd q = (e2u * (lap_u - e2u + 1.0)).matrix();

  std::vector<int> bad;
  for (int v = 0; v < q.size(); ++v)
    if (q[v] < 0.0) bad.push_back(v);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "manufactured q negative at " << bad.size() << " vertices:";
    for (std::size_t i = 0; i < bad.size() && i < 8; ++i) os << " " << bad[i];
    if (bad.size() > 8) os << " ...";
    os << " (shrink u_exact's amplitude)";
    throw ValidationError(os.str());
  }

  QuadDiffNormField out;
  out.values = std::move(q);
  out.mesh_fingerprint = mesh.fingerprint;
  out.provenance = FieldProvenance::Manufactured;
  out.note = "discrete back-solve";
  return out;
}

QuadDiffNormField synth_with_zeros(const SurfaceMesh& mesh,
                                   const std::vector<std::pair<int, int>>& zeros,
                                   double amplitude) {
  if (!(amplitude > 0.0))
    throw ValidationError("synth_with_zeros: amplitude must be > 0");
  int total = 0;
  for (auto [v, m] : zeros) {
    if (v < 0 || v >= mesh.num_vertices)
      throw ValidationError("synth_with_zeros: vertex " + std::to_string(v) +
                            " out of range");
    if (m < 1) throw ValidationError("synth_with_zeros: multiplicity must be >= 1");
    total += m;
  }
  const int expected = 4 * mesh.genus - 4;
  if (total != expected)
    throw ValidationError("synth_with_zeros: multiplicities sum to " +
                          std::to_string(total) + ", expected 4g-4 = " +
                          std::to_string(expected));

  // Graph distance from each zero (Dijkstra on edge lengths).
  const auto adj = mesh.vertex_adjacency();
  const auto distances_from = [&](int src) {
    Eigen::VectorXd d =
        Eigen::VectorXd::Constant(mesh.num_vertices,
                                  std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
      auto [dist, v] = heap.top();
      heap.pop();
      if (dist > d[v]) continue;
      for (auto [w, e] : adj[v]) {
        const double nd = dist + mesh.edge_lengths[e];
        if (nd < d[w]) {
          d[w] = nd;
          heap.push({nd, w});
        }
      }
    }
    return d;
  };

  const double scale = 0.35 * std::sqrt(mesh.total_area);
  Eigen::ArrayXd raw = Eigen::ArrayXd::Ones(mesh.num_vertices);
  for (auto [z, m] : zeros) {
    const Eigen::ArrayXd d = distances_from(z).array();
    // tanh((d/s)^2)^m vanishes to order 2m at z and saturates at 1.
    raw *= ((d / scale).square().tanh()).pow(m);
  }
  const double peak = raw.maxCoeff();
  if (!(peak > 0.0))
    throw ValidationError("synth_with_zeros: bump product vanished everywhere");

  QuadDiffNormField out;
  out.values = (raw * (amplitude * amplitude / peak)).matrix();
  out.mesh_fingerprint = mesh.fingerprint;
  out.provenance = FieldProvenance::PrescribedZeros;
  out.zero_set = zeros;
  out.note = "amplitude=" + std::to_string(amplitude);
  out.validate(mesh);
  return out;
}

QuadDiffNormField scale_ray(const QuadDiffNormField& q_hat, double t) {
  if (t < 0.0) throw ValidationError("ray parameter t must be >= 0");
  QuadDiffNormField out = q_hat;
  out.values *= t * t;
  out.note = q_hat.note + " scaled by t=" + std::to_string(t);
  return out;
}

std::vector<std::pair<int, int>> random_zero_set(const SurfaceMesh& mesh,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  int remaining = 4 * mesh.genus - 4;
  std::vector<std::pair<int, int>> zeros;
  std::vector<char> used(mesh.num_vertices, 0);
  while (remaining > 0) {
    int v = rng.uniform_int(0, mesh.num_vertices - 1);
    while (used[v]) v = (v + 1) % mesh.num_vertices;
    used[v] = 1;
    const int m = remaining == 1 ? 1 : rng.uniform_int(1, std::min(2, remaining));
    zeros.emplace_back(v, m);
    remaining -= m;
  }
  return zeros;
}

SmoothProblem smooth_radial_problem(int genus, int refinement) {
  std::vector<hyp::Complex> embedding;
  SurfaceMesh mesh = build_polygon_mesh(genus, refinement, &embedding);

  const double s = 0.15;
  const double amp = 0.015;
  const double b0 = 0.85 * hyp::regular_polygon_apothem_4g(genus);

  const auto phi = [](double x) {
    const double y = 1.0 - x * x;
    return y * y * y * y;
  };
  const auto dphi = [](double x) {
    const double y = 1.0 - x * x;
    return -8.0 * x * y * y * y;
  };
  const auto ddphi = [](double x) {
    const double y = 1.0 - x * x;
    return y * y * (-8.0 * y + 48.0 * x * x);
  };

  const int V = mesh.num_vertices;
  Eigen::VectorXd u(V), qv(V);
  for (int v = 0; v < V; ++v) {
    const double rho = hyp::dist(hyp::Complex(0.0, 0.0), embedding[v]);
    double uv = -s, lap_u = 0.0;
    if (rho < b0) {
      const double x = rho / b0;
      uv = -s - amp * phi(x);
      const double du = -(amp / b0) * dphi(x);
      const double ddu = -(amp / (b0 * b0)) * ddphi(x);
      // Radial Laplacian u'' + coth(rho) u'; at the center both terms are u''(0).
      lap_u = rho < 1e-12 ? 2.0 * ddu : ddu + du / std::tanh(rho);
    }
    const double e2u = std::exp(2.0 * uv);
    u[v] = uv;
    qv[v] = e2u * (lap_u - e2u + 1.0);
  }

  SmoothProblem out;
  out.u_exact = ScalarField{std::move(u), mesh.fingerprint};
  out.q.values = std::move(qv);
  out.q.mesh_fingerprint = mesh.fingerprint;
  out.q.provenance = FieldProvenance::Manufactured;
  out.q.note = "smooth radial profile";
  out.mesh = std::move(mesh);
  out.q.validate(out.mesh);
  return out;
}

}  // namespace waf
