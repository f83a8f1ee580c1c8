#include "waf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "waf/numerics.hpp"

namespace waf {

namespace {

std::uint64_t pack_edge(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

// Numerically stable Heron (Kahan's ordering).
double triangle_area(double a, double b, double c, int face_id) {
  double s[3] = {a, b, c};
  std::sort(s, s + 3);  // s[2] >= s[1] >= s[0]
  const double hi = s[2], mid = s[1], lo = s[0];
  const double t1 = hi + (mid + lo);
  const double t2 = lo - (hi - mid);
  const double t3 = lo + (hi - mid);
  const double t4 = hi + (mid - lo);
  const double prod = t1 * t2 * t3 * t4;
  if (!(prod > 0.0)) {
    std::ostringstream os;
    os << "face " << face_id << ": triangle inequality violated (edges " << a
       << ", " << b << ", " << c << ")";
    fail(os.str());
  }
  return 0.25 * std::sqrt(prod);
}

double corner_angle_from_lengths(double opp, double adj1, double adj2) {
  double c = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace

int SurfaceMesh::edge_id(int a, int b) const {
  auto it = edge_lookup.find(pack_edge(a, b));
  return it == edge_lookup.end() ? -1 : it->second;
}

double SurfaceMesh::edge_length(int a, int b) const {
  const int id = edge_id(a, b);
  if (id < 0) {
    std::ostringstream os;
    os << "edge " << a << "-" << b << ": not present in mesh";
    fail(os.str());
  }
  return edge_lengths[id];
}

void SurfaceMesh::finalize() {
  if (genus < 2) fail("genus must be >= 2, got " + std::to_string(genus));
  if (refinement_level < 0) fail("refinement_level must be >= 0");
  if (faces.empty()) fail("mesh has no faces");
  if (edges.size() != edge_lengths.size())
    fail("edge list and edge length list differ in size");

  int max_id = -1;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& [i, j, k] = faces[f];
    if (i < 0 || j < 0 || k < 0)
      fail("face " + std::to_string(f) + ": negative vertex id");
    if (i == j || j == k || i == k)
      fail("face " + std::to_string(f) + ": repeated vertex");
    max_id = std::max({max_id, i, j, k});
  }
  num_vertices = max_id + 1;

  edge_lookup.clear();
  edge_lookup.reserve(edges.size() * 2);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (a == b || a < 0 || b >= num_vertices || b < 0 || a >= num_vertices) {
      std::ostringstream os;
      os << "edge " << a << "-" << b << ": bad endpoints";
      fail(os.str());
    }
    const double l = edge_lengths[e];
    if (!(l > 0.0) || !std::isfinite(l)) {
      std::ostringstream os;
      os << "edge " << a << "-" << b << ": nonpositive or nonfinite length " << l;
      fail(os.str());
    }
    if (!edge_lookup.emplace(pack_edge(a, b), static_cast<int>(e)).second) {
      std::ostringstream os;
      os << "edge " << a << "-" << b << ": duplicate entry";
      fail(os.str());
    }
  }

  // Closed + orientable: every undirected edge appears in exactly two faces,
  // with opposite orientations.
  std::vector<int> fwd(edges.size(), 0), bwd(edges.size(), 0);
  face_edge.assign(faces.size(), {-1, -1, -1});
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& fc = faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = fc[(k + 1) % 3], b = fc[(k + 2) % 3];
      const int e = edge_id(a, b);
      if (e < 0) {
        std::ostringstream os;
        os << "face " << f << ": uses missing edge " << std::min(a, b) << "-"
           << std::max(a, b);
        fail(os.str());
      }
      face_edge[f][k] = e;
      (a < b ? fwd : bwd)[e] += 1;
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (fwd[e] != 1 || bwd[e] != 1) {
      std::ostringstream os;
      os << "edge " << edges[e].first << "-" << edges[e].second << ": bounds "
         << fwd[e] + bwd[e] << " faces (orientations " << fwd[e] << "/" << bwd[e]
         << "); mesh must be closed and orientable";
      fail(os.str());
    }
  }

  // Connectivity.
  {
    std::vector<char> seen(num_vertices, 0);
    std::vector<std::vector<int>> adj(num_vertices);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int count = 1;
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          bfs.push(w);
        }
    }
    if (count != num_vertices) {
      fail("mesh is disconnected: reached " + std::to_string(count) + " of " +
           std::to_string(num_vertices) + " vertices");
    }
  }

  const int chi = euler_characteristic();
  if (chi != 2 - 2 * genus) {
    std::ostringstream os;
    os << "euler characteristic " << chi << " != 2-2g (" << 2 - 2 * genus
       << ") for genus " << genus;
    fail(os.str());
  }

  // Geometry caches.
  corner_angle.assign(faces.size(), {0.0, 0.0, 0.0});
  face_area.assign(faces.size(), 0.0);
  vertex_area = Eigen::VectorXd::Zero(num_vertices);
  total_area = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const double l0 = edge_lengths[face_edge[f][0]];
    const double l1 = edge_lengths[face_edge[f][1]];
    const double l2 = edge_lengths[face_edge[f][2]];
    const double area = triangle_area(l0, l1, l2, static_cast<int>(f));
    face_area[f] = area;
    total_area += area;
    corner_angle[f][0] = corner_angle_from_lengths(l0, l1, l2);
    corner_angle[f][1] = corner_angle_from_lengths(l1, l2, l0);
    corner_angle[f][2] = corner_angle_from_lengths(l2, l0, l1);
    for (int k = 0; k < 3; ++k) vertex_area[faces[f][k]] += area / 3.0;
  }

  for (const auto& [name, cycle] : marked_curves) {
    if (name.empty()) fail("marked curve with empty name");
    if (cycle.size() < 3)
      fail("marked curve '" + name + "': needs at least 3 vertices");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
      if (a < 0 || a >= num_vertices)
        fail("marked curve '" + name + "': vertex out of range");
      if (edge_id(a, b) < 0) {
        std::ostringstream os;
        os << "marked curve '" << name << "': consecutive vertices " << a << ", "
           << b << " are not an edge";
        fail(os.str());
      }
    }
  }

  // Content fingerprint over combinatorics + metric + marks.
  std::uint64_t h = fnv1a("surface-mesh");
  h = fnv1a_u64(static_cast<std::uint64_t>(genus), h);
  h = fnv1a_u64(static_cast<std::uint64_t>(refinement_level), h);
  h = fnv1a_u64(static_cast<std::uint64_t>(num_vertices), h);
  for (const auto& fc : faces)
    for (int v : fc) h = fnv1a_u64(static_cast<std::uint64_t>(v), h);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    h = fnv1a_u64(pack_edge(edges[e].first, edges[e].second), h);
    h = fnv1a_double(edge_lengths[e], h);
  }
  for (const auto& [name, cycle] : marked_curves) {
    h = fnv1a(name, h);
    for (int v : cycle) h = fnv1a_u64(static_cast<std::uint64_t>(v), h);
  }
  fingerprint = h;
}

Eigen::VectorXd SurfaceMesh::angle_defects() const {
  Eigen::VectorXd defect =
      Eigen::VectorXd::Constant(num_vertices, 2.0 * M_PI);
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int k = 0; k < 3; ++k) defect[faces[f][k]] -= corner_angle[f][k];
  return defect;
}

std::vector<std::vector<std::pair<int, int>>> SurfaceMesh::vertex_adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(num_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, static_cast<int>(e));
    adj[edges[e].second].emplace_back(edges[e].first, static_cast<int>(e));
  }
  return adj;
}

double SurfaceMesh::marked_curve_length(const std::string& name) const {
  auto it = marked_curves.find(name);
  if (it == marked_curves.end()) fail("marked curve '" + name + "' not present");
  const auto& cycle = it->second;
  double len = 0.0;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    len += edge_lengths[edge_id(cycle[i], cycle[(i + 1) % cycle.size()])];
  return len;
}

ScalarField SurfaceMesh::make_field(double fill) const {
  return ScalarField{Eigen::VectorXd::Constant(num_vertices, fill), fingerprint};
}

ScalarField SurfaceMesh::make_field(Eigen::VectorXd values) const {
  if (values.size() != num_vertices)
    fail("field size " + std::to_string(values.size()) + " != vertex count " +
         std::to_string(num_vertices));
  return ScalarField{std::move(values), fingerprint};
}

void SurfaceMesh::check_field(const ScalarField& f, const char* what) const {
  if (f.values.size() != num_vertices)
    fail(std::string(what) + ": field size " + std::to_string(f.values.size()) +
         " != vertex count " + std::to_string(num_vertices));
  if (f.mesh_fingerprint != fingerprint)
    fail(std::string(what) + ": field bound to a different mesh (fingerprint mismatch)");
  if (!f.values.allFinite()) fail(std::string(what) + ": field has nonfinite values");
}

SurfaceMesh refine(const SurfaceMesh& mesh) {
  SurfaceMesh out;
  out.genus = mesh.genus;
  out.refinement_level = mesh.refinement_level + 1;

  const int V = mesh.num_vertices;
  const auto mid_id = [&](int edge) { return V + edge; };

  out.faces.reserve(mesh.faces.size() * 4);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto [a, b, c] = mesh.faces[f];
    const int mab = mid_id(mesh.edge_id(a, b));
    const int mbc = mid_id(mesh.edge_id(b, c));
    const int mca = mid_id(mesh.edge_id(c, a));
    out.faces.push_back({a, mab, mca});
    out.faces.push_back({b, mbc, mab});
    out.faces.push_back({c, mca, mbc});
    out.faces.push_back({mab, mbc, mca});
  }

  std::unordered_map<std::uint64_t, double> lengths;
  lengths.reserve(mesh.edges.size() * 4);
  const auto add_edge = [&](int a, int b, double l) {
    lengths.emplace(pack_edge(a, b), l);
  };
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [a, b] = mesh.edges[e];
    const double half = 0.5 * mesh.edge_lengths[e];
    add_edge(a, mid_id(static_cast<int>(e)), half);
    add_edge(b, mid_id(static_cast<int>(e)), half);
  }
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto [a, b, c] = mesh.faces[f];
    const int eab = mesh.edge_id(a, b), ebc = mesh.edge_id(b, c),
              eca = mesh.edge_id(c, a);
    // Midline opposite each original edge has half that edge's length.
    add_edge(mid_id(ebc), mid_id(eca), 0.5 * mesh.edge_lengths[eab]);
    add_edge(mid_id(eca), mid_id(eab), 0.5 * mesh.edge_lengths[ebc]);
    add_edge(mid_id(eab), mid_id(ebc), 0.5 * mesh.edge_lengths[eca]);
  }

  out.edges.reserve(lengths.size());
  out.edge_lengths.reserve(lengths.size());
  std::vector<std::uint64_t> keys;
  keys.reserve(lengths.size());
  for (const auto& [k, l] : lengths) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t k : keys) {
    out.edges.emplace_back(static_cast<int>(k >> 32),
                           static_cast<int>(k & 0xffffffffu));
    out.edge_lengths.push_back(lengths[k]);
  }

  for (const auto& [name, cycle] : mesh.marked_curves) {
    std::vector<int> refined;
    refined.reserve(cycle.size() * 2);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
      refined.push_back(a);
      refined.push_back(mid_id(mesh.edge_id(a, b)));
    }
    out.marked_curves.emplace(name, std::move(refined));
  }

  out.finalize();
  return out;
}

LinearOperatorHandle laplacian(const SurfaceMesh& mesh, double angle_floor) {
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    for (int k = 0; k < 3; ++k)
      if (mesh.corner_angle[f][k] < angle_floor) {
        std::ostringstream os;
        os << "face " << f << ": corner angle " << mesh.corner_angle[f][k]
           << " below floor " << angle_floor;
        throw ValidationError(os.str());
      }

  const int n = mesh.num_vertices;
  std::vector<double> edge_w(mesh.edges.size(), 0.0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    for (int k = 0; k < 3; ++k) {
      const double a = mesh.corner_angle[f][k];
      edge_w[mesh.face_edge[f][k]] += 0.5 * std::cos(a) / std::sin(a);
    }

  // weak = -S: off-diagonal +w_e, diagonal -(row sum of off-diagonals),
  // accumulated in sorted-neighbor order so constants are killed to round-off.
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [i, j] = mesh.edges[e];
    rows[i].emplace_back(j, edge_w[e]);
    rows[j].emplace_back(i, edge_w[e]);
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.edges.size() * 2 + n);
  for (int i = 0; i < n; ++i) {
    std::sort(rows[i].begin(), rows[i].end());
    double diag = 0.0;
    for (const auto& [j, w] : rows[i]) {
      trips.emplace_back(i, j, w);
      diag += w;
    }
    trips.emplace_back(i, i, -diag);
  }

  LinearOperatorHandle op;
  op.weak.resize(n, n);
  op.weak.setFromTriplets(trips.begin(), trips.end());
  op.weak.makeCompressed();
  op.mass = mesh.vertex_area;
  op.mesh_fingerprint = mesh.fingerprint;
  return op;
}

double integrate(const SurfaceMesh& mesh, const ScalarField& f,
                 const ScalarField* weight) {
  mesh.check_field(f, "integrate");
  if (weight == nullptr) return (f.values.array() * mesh.vertex_area.array()).sum();
  mesh.check_field(*weight, "integrate weight");
  return (f.values.array() * weight->values.array() * mesh.vertex_area.array())
      .sum();
}

}  // namespace waf
