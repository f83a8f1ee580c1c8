#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "waf/io.hpp"
#include "waf/journal.hpp"

using namespace waf;
using waftest::base_mesh;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "waf_io_tests";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("mesh round trip preserves structure, metric, and fingerprint") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const Json j = mesh_to_json(m);
  const SurfaceMesh back = mesh_from_json(j);

  CHECK(back.fingerprint == m.fingerprint);
  CHECK(back.genus == m.genus);
  CHECK(back.refinement_level == m.refinement_level);
  CHECK(back.num_vertices == m.num_vertices);
  CHECK(back.faces.size() == m.faces.size());
  CHECK(back.edges.size() == m.edges.size());
  CHECK(back.total_area == doctest::Approx(m.total_area).epsilon(1e-14));
  CHECK(back.marked_curve_length("a1") ==
        doctest::Approx(m.marked_curve_length("a1")).epsilon(1e-14));

  // Serialization is canonical: dumping the reloaded mesh is byte-identical.
  CHECK(mesh_to_json(back).dump() == j.dump());
}

TEST_CASE("mesh loader reports the first violation with its location") {
  const Json good = mesh_to_json(base_mesh(2, 0));

  SUBCASE("missing genus") {
    Json j = good;
    j.erase("genus");
    CHECK_THROWS_WITH_AS(mesh_from_json(j), doctest::Contains("genus"),
                         ValidationError);
  }
  SUBCASE("malformed edge key") {
    Json j = good;
    Json lens = j.at("edge_lengths");
    const std::string first = lens.begin().key();
    const double v = lens.begin().value();
    lens.erase(first);
    lens["nonsense"] = v;
    j["edge_lengths"] = lens;
    CHECK_THROWS_WITH_AS(mesh_from_json(j), doctest::Contains("edge key"),
                         ValidationError);
  }
  SUBCASE("negative edge length") {
    Json j = good;
    Json& lens = j.at("edge_lengths");
    lens.begin().value() = -0.25;
    CHECK_THROWS_AS(mesh_from_json(j), ValidationError);
  }
  SUBCASE("face vertex out of range") {
    Json j = good;
    j["faces"][0][0] = 100000;
    CHECK_THROWS_WITH_AS(mesh_from_json(j), doctest::Contains("faces"),
                         ValidationError);
  }
  SUBCASE("duplicate vertex id") {
    Json j = good;
    j["vertices"][1] = 0;
    CHECK_THROWS_WITH_AS(mesh_from_json(j), doctest::Contains("duplicate"),
                         ValidationError);
  }
  SUBCASE("non-object input") {
    CHECK_THROWS_AS(mesh_from_json(Json::array()), ValidationError);
  }
}

TEST_CASE("scalar field round trip: bare arrays and field objects") {
  const SurfaceMesh& m = base_mesh(2, 0);
  const ScalarField f = m.make_field(waftest::wiggle(m.num_vertices));

  const Json j = field_to_json(f);
  const ScalarField back = field_from_json(j, m);
  CHECK((back.values - f.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.mesh_fingerprint == m.fingerprint);

  // A bare array binds to the supplied mesh.
  Json bare = Json::array();
  for (int i = 0; i < m.num_vertices; ++i) bare.push_back(0.5);
  const ScalarField fromBare = field_from_json(bare, m);
  CHECK(fromBare.values.minCoeff() == 0.5);

  SUBCASE("wrong length is rejected") {
    bare.push_back(0.5);
    CHECK_THROWS_AS(field_from_json(bare, m), ValidationError);
  }
  SUBCASE("fingerprint mismatch is rejected") {
    CHECK_THROWS_WITH_AS(field_from_json(j, base_mesh(2, 1)),
                         doctest::Contains("fingerprint"), ValidationError);
  }
  SUBCASE("nonfinite entries are rejected") {
    Json bad = j;
    bad["values"][0] = "oops";
    CHECK_THROWS_AS(field_from_json(bad, m), ValidationError);
  }
}

TEST_CASE("q field round trip keeps provenance, zero set, and note") {
  const SurfaceMesh& m = base_mesh(2, 1);
  const QuadDiffNormField q =
      synth_with_zeros(m, random_zero_set(m, 5), 0.35);

  const Json j = qfield_to_json(q);
  const QuadDiffNormField back = qfield_from_json(j, m);
  CHECK((back.values - q.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.provenance == q.provenance);
  CHECK(back.zero_set == q.zero_set);
  CHECK(back.note == q.note);

  SUBCASE("negative values are rejected on load") {
    Json bad = j;
    bad["values"][0] = -1.0;
    CHECK_THROWS_AS(qfield_from_json(bad, m), ValidationError);
  }
  SUBCASE("unknown provenance is rejected") {
    Json bad = j;
    bad["provenance"]["kind"] = "alchemy";
    CHECK_THROWS_AS(qfield_from_json(bad, m), ValidationError);
  }
}

TEST_CASE("solution and triple round trips are bit-exact") {
  const MinimalTriple t = waftest::constant_triple(2, 1, 0.16);

  const Json js = solution_to_json(t.solution);
  const ConformalSolution s = solution_from_json(js, t.mesh);
  CHECK((s.u.values - t.solution.u.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.residual_norm == t.solution.residual_norm);
  CHECK(s.iterations == t.solution.iterations);
  CHECK(s.branch == t.solution.branch);
  CHECK(s.converged == t.solution.converged);

  const Json jt = triple_to_json(t);
  const MinimalTriple back = triple_from_json(jt);
  CHECK(back.mesh.fingerprint == t.mesh.fingerprint);
  CHECK((back.q.values - t.q.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.solution.u.values - t.solution.u.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.lambda0() == t.lambda0());

  SUBCASE("a non-converged solution cannot enter a triple") {
    Json bad = jt;
    bad["solution"]["converged"] = false;
    CHECK_THROWS_AS(triple_from_json(bad), ValidationError);
  }
  SUBCASE("q bound to a different mesh is rejected") {
    Json bad = jt;
    bad["q"]["mesh_fingerprint"] = "00000000deadbeef";
    CHECK_THROWS_AS(triple_from_json(bad), ValidationError);
  }
}

TEST_CASE("correspondence serialization") {
  const Correspondence id = Correspondence::identity(4);
  const Json j = correspondence_to_json(id);
  const Correspondence back = correspondence_from_json(j, 4);
  CHECK(back.map == id.map);

  Json expl;
  expl["type"] = "explicit";
  expl["map"] = {3, -1, 0, 1};
  CHECK(correspondence_from_json(expl, 4).map == std::vector<int>{3, -1, 0, 1});

  SUBCASE("identity type needs no map") {
    Json idj;
    idj["type"] = "identity";
    CHECK(correspondence_from_json(idj, 3).map == std::vector<int>{0, 1, 2});
  }
  SUBCASE("bad entries are rejected") {
    Json bad;
    bad["type"] = "explicit";
    // Images are range-checked against the codomain mesh at use time, so a
    // large image survives loading; only entries below -1 are nonsense here.
    bad["map"] = {0, 1, 9};
    CHECK_NOTHROW(correspondence_from_json(bad, 3));
    bad["map"] = {0, -2, 1};
    CHECK_THROWS_AS(correspondence_from_json(bad, 3), ValidationError);
    bad["type"] = "mystery";
    bad["map"] = {0, 1, 2};
    CHECK_THROWS_AS(correspondence_from_json(bad, 3), ValidationError);
  }
}

TEST_CASE("json files: save, load, and parse failures carry the path") {
  const fs::path dir = scratch_dir();
  const fs::path ok = dir / "roundtrip.json";
  Json j;
  j["x"] = 42;
  save_json_file(ok.string(), j);
  CHECK(load_json_file(ok.string()) == j);

  const fs::path missing = dir / "does_not_exist.json";
  CHECK_THROWS_WITH_AS(load_json_file(missing.string()),
                       doctest::Contains("does_not_exist"), ValidationError);

  const fs::path broken = dir / "broken.json";
  std::ofstream(broken.string()) << "{ not json";
  CHECK_THROWS_WITH_AS(load_json_file(broken.string()),
                       doctest::Contains("broken"), ValidationError);
}

TEST_CASE("content hashes are stable and sensitive") {
  Json a;
  a["k"] = 1;
  a["z"] = "s";
  Json b;
  b["z"] = "s";
  b["k"] = 1;  // same content, different insertion order
  CHECK(json_content_hash(a) == json_content_hash(b));
  b["k"] = 2;
  CHECK(json_content_hash(a) != json_content_hash(b));
}

TEST_CASE("journal: append, read back, malformed lines rejected") {
  const fs::path dir = scratch_dir();
  const fs::path path = dir / "journal_test.jsonl";
  fs::remove(path);

  RunRecord rec;
  rec.command = "solve";
  rec.input_hashes = {"abc123"};
  rec.parameters = Json{{"tol", 1e-10}};
  rec.outputs = Json{{"converged", true}};
  rec.timestamp = iso8601_utc_now();
  rec.tool_version = "0.1.0";
  rec.wall_ms = 12.5;

  append_record(path.string(), rec);
  append_record(path.string(), rec);

  const auto records = read_journal(path.string());
  REQUIRE(records.size() == 2);
  CHECK(records[0].command == "solve");
  CHECK(records[0].input_hashes == rec.input_hashes);
  CHECK(records[0].parameters == rec.parameters);
  CHECK(records[0].outputs == rec.outputs);
  CHECK(records[0].tool_version == "0.1.0");

  // Outputs blocks are comparable across records even though timestamps move.
  CHECK(records[0].outputs == records[1].outputs);

  std::ofstream(path.string(), std::ios::app) << "not json at all\n";
  CHECK_THROWS_WITH_AS(read_journal(path.string()), doctest::Contains("line"),
                       ValidationError);
}

TEST_CASE("journal path resolution order: flag, environment, out dir") {
  unsetenv("WAFSPACE_JOURNAL");
  CHECK(resolve_journal_path("explicit.jsonl", "outdir") == "explicit.jsonl");
  CHECK(resolve_journal_path("", "outdir") == "outdir/journal.jsonl");
  CHECK(resolve_journal_path("", "") == "journal.jsonl");

  setenv("WAFSPACE_JOURNAL", "/tmp/envjournal.jsonl", 1);
  CHECK(resolve_journal_path("", "outdir") == "/tmp/envjournal.jsonl");
  CHECK(resolve_journal_path("flag.jsonl", "outdir") == "flag.jsonl");
  unsetenv("WAFSPACE_JOURNAL");
}

TEST_CASE("timestamps are well-formed ISO 8601 UTC") {
  const std::string ts = iso8601_utc_now();
  REQUIRE(ts.size() == 24);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == '.');
  CHECK(ts.back() == 'Z');
}

}  // TEST_SUITE
