#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "sptree/graph.hpp"

namespace sptree {

// Graph document:
//   {"vertices": [0, 1, ...],
//    "edges": [{"id": 0, "u": 0, "v": 1}, ...],
//    "rotation": {"0": [edge ids in cyclic order], ...},
//    "labels": {"0": "name", ...}}
// A loop appears twice in its vertex's rotation list; the first occurrence
// is taken as its u-end.

nlohmann::json graph_to_json(const EmbeddedMultiGraph& g);
/// Validates the rotation system and connectivity.
EmbeddedMultiGraph graph_from_json(const nlohmann::json& doc);

EmbeddedMultiGraph load_graph(const std::filesystem::path& path);
void save_graph(const EmbeddedMultiGraph& g, const std::filesystem::path& path);

}  // namespace sptree
