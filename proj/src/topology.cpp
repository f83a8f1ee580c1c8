#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "waf/mesh.hpp"

namespace waf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using WeightedAdj = std::vector<std::vector<std::tuple<int, int, double>>>;

WeightedAdj weighted_adjacency(const SurfaceMesh& mesh, const Eigen::VectorXd* u) {
  WeightedAdj adj(mesh.num_vertices);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [a, b] = mesh.edges[e];
    double w = mesh.edge_lengths[e];
    if (u != nullptr) w *= std::exp(0.5 * ((*u)[a] + (*u)[b]));
    adj[a].emplace_back(b, static_cast<int>(e), w);
    adj[b].emplace_back(a, static_cast<int>(e), w);
  }
  return adj;
}

// Truncated Dijkstra from `vertex` with Z/2 signatures along tree paths; the
// best essential loop is the cheapest settled-settled edge whose closed walk
// has nonzero signature.
double loop_through(const WeightedAdj& adj, const std::vector<std::uint32_t>& labels,
                    int vertex, double cap) {
  const int V = static_cast<int>(adj.size());
  std::vector<double> dist(V, kInf);
  std::vector<std::uint32_t> sig(V, 0);
  std::vector<char> settled(V, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[vertex] = 0.0;
  heap.push({0.0, vertex});
  double best = kInf;

  while (!heap.empty()) {
    const auto [d, a] = heap.top();
    heap.pop();
    if (settled[a]) continue;
    if (2.0 * d >= best || d > 0.5 * cap) break;
    settled[a] = 1;
    for (const auto& [b, e, w] : adj[a]) {
      if (settled[b]) {
        if ((sig[a] ^ sig[b] ^ labels[e]) != 0)
          best = std::min(best, d + dist[b] + w);
      } else if (d + w < dist[b]) {
        dist[b] = d + w;
        sig[b] = sig[a] ^ labels[e];
        heap.push({dist[b], b});
      }
    }
  }
  return best <= cap ? best : kInf;
}

}  // namespace

std::vector<std::uint32_t> homology_edge_labels(const SurfaceMesh& mesh) {
  const int V = mesh.num_vertices;
  const int E = static_cast<int>(mesh.edges.size());
  const int F = static_cast<int>(mesh.faces.size());

  // Primal spanning tree (BFS from vertex 0).
  std::vector<char> in_tree(E, 0);
  {
    auto adj = mesh.vertex_adjacency();
    std::vector<char> seen(V, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (auto [w, e] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          in_tree[e] = 1;
          bfs.push(w);
        }
    }
  }

  // Edge -> the two incident faces.
  std::vector<std::array<int, 2>> edge_face(E, {-1, -1});
  for (int f = 0; f < F; ++f)
    for (int k = 0; k < 3; ++k) {
      auto& ef = edge_face[mesh.face_edge[f][k]];
      (ef[0] < 0 ? ef[0] : ef[1]) = f;
    }

  // Dual spanning tree (cotree) on edges not in the primal tree.
  std::vector<char> in_cotree(E, 0);
  std::vector<int> dual_parent(F, -1), dual_edge(F, -1), dual_depth(F, 0);
  {
    std::vector<char> seen(F, 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    while (!bfs.empty()) {
      const int f = bfs.front();
      bfs.pop();
      for (int k = 0; k < 3; ++k) {
        const int e = mesh.face_edge[f][k];
        if (in_tree[e] || in_cotree[e]) continue;
        const int g = edge_face[e][0] == f ? edge_face[e][1] : edge_face[e][0];
        if (seen[g]) continue;
        seen[g] = 1;
        in_cotree[e] = 1;
        dual_parent[g] = f;
        dual_edge[g] = e;
        dual_depth[g] = dual_depth[f] + 1;
        bfs.push(g);
      }
    }
  }

  std::vector<int> leftover;
  for (int e = 0; e < E; ++e)
    if (!in_tree[e] && !in_cotree[e]) leftover.push_back(e);
  if (static_cast<int>(leftover.size()) != 2 * mesh.genus)
    throw NumericalError("tree-cotree decomposition: expected " +
                         std::to_string(2 * mesh.genus) + " leftover edges, got " +
                         std::to_string(leftover.size()));

  // Each leftover edge closes a dual cycle: the edge plus the cotree path
  // between its faces. Mark bit i on every primal edge the cycle crosses;
  // XOR along any closed primal loop then reads off its pairing with the
  // 2g dual basis cycles.
  std::vector<std::uint32_t> labels(E, 0);
  for (std::size_t i = 0; i < leftover.size(); ++i) {
    const std::uint32_t bit = 1u << i;
    labels[leftover[i]] ^= bit;
    int f = edge_face[leftover[i]][0];
    int g = edge_face[leftover[i]][1];
    while (dual_depth[f] > dual_depth[g]) {
      labels[dual_edge[f]] ^= bit;
      f = dual_parent[f];
    }
    while (dual_depth[g] > dual_depth[f]) {
      labels[dual_edge[g]] ^= bit;
      g = dual_parent[g];
    }
    while (f != g) {
      labels[dual_edge[f]] ^= bit;
      labels[dual_edge[g]] ^= bit;
      f = dual_parent[f];
      g = dual_parent[g];
    }
  }
  return labels;
}

double shortest_essential_loop(const SurfaceMesh& mesh,
                               const std::vector<std::uint32_t>& labels,
                               const Eigen::VectorXd* u, int vertex, double cap) {
  if (vertex < 0 || vertex >= mesh.num_vertices)
    throw ValidationError("loop search: vertex out of range");
  if (labels.size() != mesh.edges.size())
    throw ValidationError("loop search: label count mismatch");
  return loop_through(weighted_adjacency(mesh, u), labels, vertex, cap);
}

Eigen::VectorXd essential_loop_lengths(const SurfaceMesh& mesh,
                                       const Eigen::VectorXd* u, double cap) {
  const auto labels = homology_edge_labels(mesh);
  const WeightedAdj adj = weighted_adjacency(mesh, u);
  Eigen::VectorXd out(mesh.num_vertices);
  for (int v = 0; v < mesh.num_vertices; ++v)
    out[v] = loop_through(adj, labels, v, cap);
  return out;
}

std::vector<int> thick_part(const SurfaceMesh& mesh, const ScalarField& conformal,
                            double eps) {
  if (!(eps > 0.0)) throw ValidationError("thick_part: eps must be > 0");
  mesh.check_field(conformal, "thick_part conformal factor");
  const Eigen::VectorXd lens =
      essential_loop_lengths(mesh, &conformal.values, 2.0 * eps);
  std::vector<int> out;
  for (int v = 0; v < mesh.num_vertices; ++v)
    if (!(lens[v] < 2.0 * eps)) out.push_back(v);
  return out;
}

}  // namespace waf
