#include "sptree/graph_io.hpp"

#include <fstream>
#include <set>

namespace sptree {

using nlohmann::json;

json graph_to_json(const EmbeddedMultiGraph& g) {
    json doc;
    doc["vertices"] = g.vertices();
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
    doc["edges"] = std::move(edges);
    json rotation = json::object();
    for (VertexId v : g.vertices()) {
        json order = json::array();
        for (const Dart& d : g.rotation(v)) order.push_back(d.edge);
        rotation[std::to_string(v)] = std::move(order);
    }
    doc["rotation"] = std::move(rotation);
    json labels = json::object();
    for (const auto& [v, name] : g.labels()) labels[std::to_string(v)] = name;
    doc["labels"] = std::move(labels);
    return doc;
}

namespace {

VertexId parse_vertex_key(const std::string& key) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(key, &used);
    } catch (const std::exception&) {
        throw GraphError("vertex key '" + key + "' is not an integer");
    }
    if (used != key.size() || value < 0) throw GraphError("vertex key '" + key + "' is not a vertex id");
    return static_cast<VertexId>(value);
}

}  // namespace

EmbeddedMultiGraph graph_from_json(const json& doc) {
    if (!doc.is_object()) throw GraphError("graph document must be a JSON object");
    for (const char* field : {"vertices", "edges", "rotation"}) {
        if (!doc.contains(field)) throw GraphError(std::string("graph document missing '") + field + "'");
    }
    EmbeddedMultiGraph g;
    try {
        for (const auto& v : doc.at("vertices")) g.add_vertex(v.get<VertexId>());
        for (const auto& e : doc.at("edges")) {
            g.add_edge(e.at("id").get<EdgeId>(), e.at("u").get<VertexId>(), e.at("v").get<VertexId>());
        }
        for (const auto& [key, order] : doc.at("rotation").items()) {
            const VertexId v = parse_vertex_key(key);
            if (!g.has_vertex(v)) throw GraphError("rotation for unknown vertex " + key);
            std::vector<Dart> darts;
            std::set<EdgeId> loop_seen;
            for (const auto& item : order) {
                const auto eid = item.get<EdgeId>();
                if (!g.has_edge(eid)) throw GraphError("rotation at vertex " + key + " references missing edge " + std::to_string(eid));
                const Edge& e = g.edge(eid);
                if (e.is_loop()) {
                    const bool second = !loop_seen.insert(eid).second;
                    darts.push_back({eid, static_cast<std::uint8_t>(second ? 1 : 0)});
                } else if (e.u == v) {
                    darts.push_back({eid, 0});
                } else if (e.v == v) {
                    darts.push_back({eid, 1});
                } else {
                    throw GraphError("rotation at vertex " + key + " lists non-incident edge " + std::to_string(eid));
                }
            }
            g.set_rotation(v, std::move(darts));
        }
        if (doc.contains("labels")) {
            for (const auto& [key, name] : doc.at("labels").items()) g.set_label(parse_vertex_key(key), name.get<std::string>());
        }
    } catch (const json::exception& ex) {
        throw GraphError(std::string("malformed graph document: ") + ex.what());
    }
    g.validate_rotation();
    if (g.num_vertices() == 0) throw GraphError("graph has no vertices");
    if (!g.is_connected()) throw GraphError("graph is disconnected");
    return g;
}

EmbeddedMultiGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw GraphError("graph file " + path.string() + " is not valid JSON: " + ex.what());
    }
    return graph_from_json(doc);
}

void save_graph(const EmbeddedMultiGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write graph file " + path.string());
    out << graph_to_json(g).dump(2) << '\n';
}

}  // namespace sptree
