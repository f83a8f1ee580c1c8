#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "waf/hyperbolic.hpp"
#include "waf/mesh.hpp"

namespace waf {

namespace {

using hyp::Complex;

// Position along a polygon side, as an exact dyadic rational.
struct SideTag {
  int side;
  long long num;
  long long den;
};

struct PolyVertex {
  Complex z;
  std::vector<SideTag> tags;  // empty for interior vertices
};

struct PolyComplex {
  std::vector<PolyVertex> verts;
  std::vector<std::array<int, 3>> faces;
};

void reduce(long long& num, long long& den) {
  const long long g = std::gcd(num == 0 ? den : num, den);
  num /= g;
  den /= g;
}

// Opposite-with-a-twist pairing per handle block [a, b, a^-1, b^-1]:
// side 4k <-> 4k+2, 4k+1 <-> 4k+3, orientation reversed.
int paired_side(int s) { return (s & 2) ? s - 2 : s + 2; }

PolyComplex base_fan(int genus) {
  const int n = 4 * genus;
  const double R = hyp::regular_polygon_circumradius_4g(genus);
  PolyComplex pc;
  pc.verts.push_back({Complex(0.0, 0.0), {}});
  for (int j = 0; j < n; ++j) {
    PolyVertex v;
    v.z = hyp::from_polar(R, 2.0 * M_PI * j / n);
    v.tags.push_back({j, 0, 1});
    v.tags.push_back({(j + n - 1) % n, 1, 1});
    pc.verts.push_back(v);
  }
  for (int j = 0; j < n; ++j)
    pc.faces.push_back({0, 1 + j, 1 + (j + 1) % n});
  return pc;
}

void subdivide(PolyComplex& pc) {
  std::map<std::pair<int, int>, int> midpoint;
  const auto mid_of = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    PolyVertex m;
    m.z = hyp::midpoint(pc.verts[a].z, pc.verts[b].z);
    for (const auto& ta : pc.verts[a].tags)
      for (const auto& tb : pc.verts[b].tags)
        if (ta.side == tb.side) {
          long long num = ta.num * tb.den + tb.num * ta.den;
          long long den = 2 * ta.den * tb.den;
          reduce(num, den);
          m.tags.push_back({ta.side, num, den});
        }
    const int id = static_cast<int>(pc.verts.size());
    pc.verts.push_back(std::move(m));
    midpoint.emplace(key, id);
    return id;
  };

  std::vector<std::array<int, 3>> fine;
  fine.reserve(pc.faces.size() * 4);
  for (const auto& [a, b, c] : pc.faces) {
    const int mab = mid_of(a, b), mbc = mid_of(b, c), mca = mid_of(c, a);
    fine.push_back({a, mab, mca});
    fine.push_back({b, mbc, mab});
    fine.push_back({c, mca, mbc});
    fine.push_back({mab, mbc, mca});
  }
  pc.faces = std::move(fine);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SurfaceMesh build_polygon_mesh(int genus, int refinement,
                               std::vector<Complex>* embedding) {
  if (genus < 2)
    throw ValidationError("genus must be >= 2, got " + std::to_string(genus));
  if (genus > 16) throw ValidationError("genus above 16 is not supported");
  if (refinement < 0)
    throw ValidationError("refinement must be >= 0, got " +
                          std::to_string(refinement));

  PolyComplex pc = base_fan(genus);
  // Two base rounds make the side-paired quotient simplicial; `refinement`
  // rounds come on top.
  for (int r = 0; r < refinement + 2; ++r) subdivide(pc);

  const int P = static_cast<int>(pc.verts.size());

  // Glue side s to paired_side(s), position p to 1-p.
  UnionFind uf(P);
  std::map<std::tuple<int, long long, long long>, int> registry;
  for (int v = 0; v < P; ++v)
    for (const auto& t : pc.verts[v].tags) registry.emplace(std::tuple{t.side, t.num, t.den}, v);
  for (int v = 0; v < P; ++v)
    for (const auto& t : pc.verts[v].tags) {
      long long num = t.den - t.num, den = t.den;
      reduce(num, den);
      auto it = registry.find(std::tuple{paired_side(t.side), num, den});
      if (it == registry.end())
        throw NumericalError("polygon gluing: missing partner boundary vertex");
      uf.unite(v, it->second);
    }

  std::vector<int> new_id(P, -1);
  int V = 0;
  for (int v = 0; v < P; ++v)
    if (uf.find(v) == v) new_id[v] = V++;
  for (int v = 0; v < P; ++v) new_id[v] = new_id[uf.find(v)];

  SurfaceMesh mesh;
  mesh.genus = genus;
  mesh.refinement_level = refinement;
  mesh.faces.reserve(pc.faces.size());

  std::map<std::pair<int, int>, double> lengths;
  double pairing_gap = 0.0;
  for (const auto& f : pc.faces) {
    std::array<int, 3> q{new_id[f[0]], new_id[f[1]], new_id[f[2]]};
    mesh.faces.push_back(q);
    for (int k = 0; k < 3; ++k) {
      const int pa = f[(k + 1) % 3], pb = f[(k + 2) % 3];
      const double len = hyp::dist(pc.verts[pa].z, pc.verts[pb].z);
      auto key = std::minmax(q[(k + 1) % 3], q[(k + 2) % 3]);
      auto [it, inserted] = lengths.emplace(key, len);
      if (!inserted) pairing_gap = std::max(pairing_gap, std::abs(it->second - len));
    }
  }
  if (pairing_gap > 1e-9)
    throw NumericalError("polygon gluing: paired edge lengths differ by " +
                         std::to_string(pairing_gap));

  mesh.edges.reserve(lengths.size());
  mesh.edge_lengths.reserve(lengths.size());
  for (const auto& [key, len] : lengths) {
    mesh.edges.emplace_back(key.first, key.second);
    mesh.edge_lengths.push_back(len);
  }

  // One marked curve per glued side pair: generators a_i from side 4k,
  // b_i from side 4k+1 of each handle block.
  for (int handle = 0; handle < genus; ++handle)
    for (int which = 0; which < 2; ++which) {
      const int side = 4 * handle + which;
      std::vector<std::pair<std::pair<long long, long long>, int>> chain;
      for (int v = 0; v < P; ++v)
        for (const auto& t : pc.verts[v].tags)
          if (t.side == side) chain.push_back({{t.num, t.den}, v});
      std::sort(chain.begin(), chain.end(),
                [](const auto& x, const auto& y) {
                  return x.first.first * y.first.second <
                         y.first.first * x.first.second;
                });
      std::vector<int> cycle;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)  // drop p = 1 corner
        cycle.push_back(new_id[chain[i].second]);
      const std::string name =
          (which == 0 ? "a" : "b") + std::to_string(handle + 1);
      mesh.marked_curves.emplace(name, std::move(cycle));
    }

  if (embedding != nullptr) {
    embedding->assign(V, Complex(0.0, 0.0));
    std::vector<char> set(V, 0);
    for (int v = 0; v < P; ++v)
      if (!set[new_id[v]]) {
        (*embedding)[new_id[v]] = pc.verts[v].z;
        set[new_id[v]] = 1;
      }
  }

  mesh.finalize();
  return mesh;
}

}  // namespace waf
