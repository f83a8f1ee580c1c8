#pragma once

#include <string>

#include "json.hpp"
#include "waf/explore.hpp"
#include "waf/solver.hpp"
#include "waf/triple.hpp"

namespace waf {

using Json = nlohmann::json;

// Serializers. Loaders validate everything and throw ValidationError with the
// first violation's location; fingerprints recompute on load.
Json mesh_to_json(const SurfaceMesh& mesh);
SurfaceMesh mesh_from_json(const Json& j);

Json field_to_json(const ScalarField& f);
ScalarField field_from_json(const Json& j, const SurfaceMesh& mesh);

Json qfield_to_json(const QuadDiffNormField& q);
QuadDiffNormField qfield_from_json(const Json& j, const SurfaceMesh& mesh);

Json solution_to_json(const ConformalSolution& s);
ConformalSolution solution_from_json(const Json& j, const SurfaceMesh& mesh);

// Triple bundle: {"mesh":..., "q":..., "solution":...}.
Json triple_to_json(const MinimalTriple& t);
MinimalTriple triple_from_json(const Json& j);

Json correspondence_to_json(const Correspondence& c);
Correspondence correspondence_from_json(const Json& j, int num_vertices);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Content hash of a JSON document (dump is canonical: sorted keys).
std::string json_content_hash(const Json& j);

}  // namespace waf
