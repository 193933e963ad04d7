#pragma once

#include <string>

#include <json.hpp>

#include "orbicluster/cluster.hpp"
#include "orbicluster/fatgraph.hpp"
#include "orbicluster/geodesic.hpp"

namespace orbicluster {

using Json = nlohmann::ordered_json;

// Seed description: n, B (row-major), d, theta (coefficient strings in the
// omega power basis, low degree first), mode "fixed" | "tracked"; optional
// omega_order and generators.
Json seed_to_json(const GenSeed& seed);
GenSeed seed_from_json(const Json& j);

// Spine description: surface {g,s,r}, vertices (cyclic half-edge lists or
// pending terminals with their order), edges with label, Z and half pair.
Json spine_to_json(const Spine& spine);
Spine spine_from_json(const Json& j);

// Word description: token list, closed flag.
Json word_to_json(const PathWord& word);
PathWord word_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace orbicluster
