#include "waf/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "waf/numerics.hpp"

namespace waf {

namespace {

void require(bool cond, const std::string& where, const std::string& what) {
  if (!cond) throw ValidationError(where + ": " + what);
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::uint64_t fingerprint_from_hex(const Json& j, const std::string& where) {
  require(j.is_string(), where, "fingerprint must be a hex string");
  const std::string s = j.get<std::string>();
  require(!s.empty() && s.size() <= 16, where, "bad fingerprint '" + s + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    int d;
    if (lc >= '0' && lc <= '9')
      d = lc - '0';
    else if (lc >= 'a' && lc <= 'f')
      d = lc - 'a' + 10;
    else
      throw ValidationError(where + ": bad fingerprint '" + s + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

Eigen::VectorXd values_from_json(const Json& j, int expected,
                                 const std::string& where) {
  require(j.is_array(), where, "expected a flat array of numbers");
  require(static_cast<int>(j.size()) == expected,
          where,
          "expected " + std::to_string(expected) + " entries, got " +
              std::to_string(j.size()));
  Eigen::VectorXd v(expected);
  for (int i = 0; i < expected; ++i) {
    const Json& x = j[i];
    require(x.is_number(), where + "[" + std::to_string(i) + "]",
            "expected a number");
    v[i] = x.get<double>();
  }
  return v;
}

Json values_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

// Fingerprint stamped in a file must match the mesh it is loaded against,
// when present.
void check_fingerprint(const Json& j, const SurfaceMesh& mesh,
                       const std::string& where) {
  if (!j.contains("mesh_fingerprint")) return;
  const std::uint64_t fp = fingerprint_from_hex(j.at("mesh_fingerprint"), where);
  if (fp != mesh.fingerprint)
    throw ValidationError(where + ": mesh_fingerprint " + fingerprint_hex(fp) +
                          " does not match the supplied mesh (" +
                          fingerprint_hex(mesh.fingerprint) + ")");
}

std::pair<int, int> parse_edge_key(const std::string& key,
                                   const std::string& where) {
  const auto dash = key.find('-');
  require(dash != std::string::npos && dash > 0 && dash + 1 < key.size(), where,
          "edge key '" + key + "' is not of the form \"i-j\"");
  int a, b;
  try {
    std::size_t pos;
    a = std::stoi(key.substr(0, dash), &pos);
    require(pos == dash, where, "edge key '" + key + "' is malformed");
    b = std::stoi(key.substr(dash + 1), &pos);
    require(pos == key.size() - dash - 1, where,
            "edge key '" + key + "' is malformed");
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError(where + ": edge key '" + key + "' is malformed");
  }
  require(a >= 0 && b >= 0, where, "edge key '" + key + "' has a negative id");
  require(a != b, where, "edge key '" + key + "' is a self-loop");
  return {a, b};
}

}  // namespace

Json mesh_to_json(const SurfaceMesh& mesh) {
  Json j;
  j["genus"] = mesh.genus;
  j["refinement_level"] = mesh.refinement_level;
  Json verts = Json::array();
  for (int v = 0; v < mesh.num_vertices; ++v) verts.push_back(v);
  j["vertices"] = std::move(verts);
  Json faces = Json::array();
  for (const auto& f : mesh.faces) faces.push_back({f[0], f[1], f[2]});
  j["faces"] = std::move(faces);
  Json lens = Json::object();
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto [a, b] = std::minmax(mesh.edges[e].first, mesh.edges[e].second);
    lens[std::to_string(a) + "-" + std::to_string(b)] = mesh.edge_lengths[e];
  }
  j["edge_lengths"] = std::move(lens);
  Json curves = Json::object();
  for (const auto& [name, cyc] : mesh.marked_curves) curves[name] = cyc;
  j["marked_curves"] = std::move(curves);
  return j;
}

SurfaceMesh mesh_from_json(const Json& j) {
  require(j.is_object(), "mesh", "expected a JSON object");
  for (const char* key : {"genus", "vertices", "faces", "edge_lengths"})
    require(j.contains(key), "mesh", std::string("missing key '") + key + "'");

  SurfaceMesh mesh;
  require(j.at("genus").is_number_integer(), "mesh.genus", "expected an integer");
  mesh.genus = j.at("genus").get<int>();
  if (j.contains("refinement_level")) {
    require(j.at("refinement_level").is_number_integer(),
            "mesh.refinement_level", "expected an integer");
    mesh.refinement_level = j.at("refinement_level").get<int>();
    require(mesh.refinement_level >= 0, "mesh.refinement_level",
            "must be >= 0");
  }

  const Json& verts = j.at("vertices");
  require(verts.is_array() && !verts.empty(), "mesh.vertices",
          "expected a nonempty array of vertex ids");
  std::vector<char> seen(verts.size(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "mesh.vertices[" + std::to_string(i) + "]";
    require(verts[i].is_number_integer(), where, "expected an integer id");
    const int id = verts[i].get<int>();
    require(id >= 0 && id < static_cast<int>(verts.size()), where,
            "id " + std::to_string(id) + " outside 0.." +
                std::to_string(verts.size() - 1) +
                " (ids must be contiguous)");
    require(!seen[id], where, "duplicate id " + std::to_string(id));
    seen[id] = 1;
  }
  const int num_vertices = static_cast<int>(verts.size());

  const Json& faces = j.at("faces");
  require(faces.is_array(), "mesh.faces", "expected an array of triangles");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string where = "mesh.faces[" + std::to_string(i) + "]";
    const Json& f = faces[i];
    require(f.is_array() && f.size() == 3, where,
            "expected three vertex ids");
    std::array<int, 3> tri;
    for (int k = 0; k < 3; ++k) {
      require(f[k].is_number_integer(), where, "expected integer ids");
      tri[k] = f[k].get<int>();
      require(tri[k] >= 0 && tri[k] < num_vertices, where,
              "vertex id " + std::to_string(tri[k]) + " out of range");
    }
    mesh.faces.push_back(tri);
  }

  const Json& lens = j.at("edge_lengths");
  require(lens.is_object(), "mesh.edge_lengths",
          "expected an object keyed by \"i-j\"");
  std::vector<std::tuple<int, int, double>> rows;
  for (const auto& [key, val] : lens.items()) {
    const std::string where = "mesh.edge_lengths[\"" + key + "\"]";
    auto [a, b] = parse_edge_key(key, where);
    if (a > b) std::swap(a, b);
    require(a < num_vertices && b < num_vertices, where,
            "vertex id out of range");
    require(val.is_number(), where, "expected a number");
    const double l = val.get<double>();
    require(std::isfinite(l) && l > 0.0, where,
            "length must be finite and > 0");
    rows.emplace_back(a, b, l);
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i)
    require(std::get<0>(rows[i]) != std::get<0>(rows[i - 1]) ||
                std::get<1>(rows[i]) != std::get<1>(rows[i - 1]),
            "mesh.edge_lengths", "duplicate edge key");
  mesh.edges.reserve(rows.size());
  mesh.edge_lengths.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    mesh.edges.emplace_back(std::get<0>(rows[i]), std::get<1>(rows[i]));
    mesh.edge_lengths[static_cast<Eigen::Index>(i)] = std::get<2>(rows[i]);
  }

  if (j.contains("marked_curves")) {
    const Json& curves = j.at("marked_curves");
    require(curves.is_object(), "mesh.marked_curves", "expected an object");
    for (const auto& [name, cyc] : curves.items()) {
      const std::string where = "mesh.marked_curves[\"" + name + "\"]";
      require(cyc.is_array(), where, "expected an array of vertex ids");
      std::vector<int> ids;
      for (const auto& v : cyc) {
        require(v.is_number_integer(), where, "expected integer ids");
        const int id = v.get<int>();
        require(id >= 0 && id < num_vertices, where,
                "vertex id " + std::to_string(id) + " out of range");
        ids.push_back(id);
      }
      mesh.marked_curves[name] = std::move(ids);
    }
  }

  mesh.finalize();
  return mesh;
}

Json field_to_json(const ScalarField& f) {
  Json j;
  j["values"] = values_to_json(f.values);
  j["mesh_fingerprint"] = fingerprint_hex(f.mesh_fingerprint);
  return j;
}

ScalarField field_from_json(const Json& j, const SurfaceMesh& mesh) {
  ScalarField f;
  if (j.is_array()) {  // bare flat array
    f.values = values_from_json(j, mesh.num_vertices, "field");
  } else {
    require(j.is_object() && j.contains("values"), "field",
            "expected a flat array or an object with 'values'");
    check_fingerprint(j, mesh, "field");
    f.values = values_from_json(j.at("values"), mesh.num_vertices,
                                "field.values");
  }
  require(f.values.allFinite(), "field", "values must be finite");
  f.mesh_fingerprint = mesh.fingerprint;
  return f;
}

Json qfield_to_json(const QuadDiffNormField& q) {
  Json j;
  j["values"] = values_to_json(q.values);
  j["mesh_fingerprint"] = fingerprint_hex(q.mesh_fingerprint);
  Json prov;
  prov["kind"] = to_string(q.provenance);
  if (!q.zero_set.empty()) {
    Json zs = Json::array();
    for (const auto& [v, m] : q.zero_set) zs.push_back({v, m});
    prov["zero_set"] = std::move(zs);
  }
  if (!q.note.empty()) prov["note"] = q.note;
  j["provenance"] = std::move(prov);
  return j;
}

QuadDiffNormField qfield_from_json(const Json& j, const SurfaceMesh& mesh) {
  QuadDiffNormField q;
  if (j.is_array()) {
    q.values = values_from_json(j, mesh.num_vertices, "q");
    q.provenance = FieldProvenance::External;
  } else {
    require(j.is_object() && j.contains("values"), "q",
            "expected a flat array or an object with 'values'");
    check_fingerprint(j, mesh, "q");
    q.values = values_from_json(j.at("values"), mesh.num_vertices, "q.values");
    if (j.contains("provenance")) {
      const Json& prov = j.at("provenance");
      require(prov.is_object(), "q.provenance", "expected an object");
      if (prov.contains("kind")) {
        require(prov.at("kind").is_string(), "q.provenance.kind",
                "expected a string");
        q.provenance = provenance_from_string(prov.at("kind").get<std::string>());
      }
      if (prov.contains("zero_set")) {
        const Json& zs = prov.at("zero_set");
        require(zs.is_array(), "q.provenance.zero_set", "expected an array");
        for (const auto& row : zs) {
          require(row.is_array() && row.size() == 2 &&
                      row[0].is_number_integer() && row[1].is_number_integer(),
                  "q.provenance.zero_set", "expected [vertex, multiplicity] pairs");
          q.zero_set.emplace_back(row[0].get<int>(), row[1].get<int>());
        }
      }
      if (prov.contains("note")) {
        require(prov.at("note").is_string(), "q.provenance.note",
                "expected a string");
        q.note = prov.at("note").get<std::string>();
      }
    }
  }
  q.mesh_fingerprint = mesh.fingerprint;
  q.validate(mesh);
  return q;
}

Json solution_to_json(const ConformalSolution& s) {
  Json j;
  j["u"] = values_to_json(s.u.values);
  j["mesh_fingerprint"] = fingerprint_hex(s.u.mesh_fingerprint);
  j["residual_norm"] = s.residual_norm;
  j["iterations"] = s.iterations;
  j["branch"] = s.branch == SolutionBranch::Upper ? "upper" : "unknown";
  j["converged"] = s.converged;
  return j;
}

ConformalSolution solution_from_json(const Json& j, const SurfaceMesh& mesh) {
  require(j.is_object() && j.contains("u"), "solution",
          "expected an object with 'u'");
  check_fingerprint(j, mesh, "solution");
  ConformalSolution s;
  s.u.values = values_from_json(j.at("u"), mesh.num_vertices, "solution.u");
  require(s.u.values.allFinite(), "solution.u", "values must be finite");
  s.u.mesh_fingerprint = mesh.fingerprint;
  if (j.contains("residual_norm")) {
    require(j.at("residual_norm").is_number(), "solution.residual_norm",
            "expected a number");
    s.residual_norm = j.at("residual_norm").get<double>();
  }
  if (j.contains("iterations")) {
    require(j.at("iterations").is_number_integer(), "solution.iterations",
            "expected an integer");
    s.iterations = j.at("iterations").get<int>();
  }
  if (j.contains("branch")) {
    require(j.at("branch").is_string(), "solution.branch", "expected a string");
    const std::string b = j.at("branch").get<std::string>();
    if (b == "upper")
      s.branch = SolutionBranch::Upper;
    else if (b == "unknown")
      s.branch = SolutionBranch::Unknown;
    else
      throw ValidationError("solution.branch: unknown value '" + b + "'");
  }
  if (j.contains("converged")) {
    require(j.at("converged").is_boolean(), "solution.converged",
            "expected a boolean");
    s.converged = j.at("converged").get<bool>();
  }
  return s;
}

Json triple_to_json(const MinimalTriple& t) {
  Json j;
  j["mesh"] = mesh_to_json(t.mesh);
  j["q"] = qfield_to_json(t.q);
  j["solution"] = solution_to_json(t.solution);
  return j;
}

MinimalTriple triple_from_json(const Json& j) {
  require(j.is_object(), "triple", "expected a JSON object");
  for (const char* key : {"mesh", "q", "solution"})
    require(j.contains(key), "triple", std::string("missing key '") + key + "'");
  MinimalTriple t;
  t.mesh = mesh_from_json(j.at("mesh"));
  t.q = qfield_from_json(j.at("q"), t.mesh);
  t.solution = solution_from_json(j.at("solution"), t.mesh);
  t.validate();
  return t;
}

Json correspondence_to_json(const Correspondence& c) {
  Json j;
  j["type"] = "explicit";
  j["map"] = c.map;
  return j;
}

Correspondence correspondence_from_json(const Json& j, int num_vertices) {
  require(j.is_object() && j.contains("type"), "correspondence",
          "expected an object with 'type'");
  require(j.at("type").is_string(), "correspondence.type", "expected a string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "identity") return Correspondence::identity(num_vertices);
  require(type == "explicit", "correspondence.type",
          "unknown value '" + type + "' (want 'identity' or 'explicit')");
  require(j.contains("map") && j.at("map").is_array(), "correspondence",
          "explicit correspondence needs a 'map' array");
  const Json& m = j.at("map");
  require(static_cast<int>(m.size()) == num_vertices, "correspondence.map",
          "expected " + std::to_string(num_vertices) + " entries, got " +
              std::to_string(m.size()));
  Correspondence c;
  for (std::size_t i = 0; i < m.size(); ++i) {
    require(m[i].is_number_integer(),
            "correspondence.map[" + std::to_string(i) + "]",
            "expected an integer (-1 for unmapped)");
    const int img = m[i].get<int>();
    require(img >= -1, "correspondence.map[" + std::to_string(i) + "]",
            "entries must be >= -1");
    c.map.push_back(img);
  }
  return c;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

std::string json_content_hash(const Json& j) {
  return fingerprint_hex(fnv1a(j.dump()));
}

}  // namespace waf
