#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sptree {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One end of an edge. end == 0 sits at Edge::u, end == 1 at Edge::v.
struct Dart {
    EdgeId edge = -1;
    std::uint8_t end = 0;

    [[nodiscard]] Dart twin() const { return {edge, static_cast<std::uint8_t>(1 - end)}; }
    friend bool operator==(const Dart&, const Dart&) = default;
};

struct Edge {
    EdgeId id = -1;
    VertexId u = -1;
    VertexId v = -1;

    [[nodiscard]] bool is_loop() const { return u == v; }
    [[nodiscard]] VertexId endpoint(std::uint8_t end) const { return end == 0 ? u : v; }
    [[nodiscard]] VertexId other(VertexId x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Planar multigraph with a combinatorial embedding (a cyclic order of
/// darts around every vertex). Edge ids are stable: contraction and
/// deletion never renumber or reuse them.
class EmbeddedMultiGraph {
public:
    EmbeddedMultiGraph() = default;

    void add_vertex(VertexId v);
    /// Appends one dart at each endpoint (for a loop, both darts at u).
    void add_edge(EdgeId id, VertexId u, VertexId v);
    /// Replaces the cyclic order at v. Must be a permutation of v's darts.
    void set_rotation(VertexId v, std::vector<Dart> order);
    void set_label(VertexId v, std::string label);

    [[nodiscard]] bool has_vertex(VertexId v) const;
    [[nodiscard]] bool has_edge(EdgeId e) const;
    [[nodiscard]] const Edge& edge(EdgeId e) const;
    [[nodiscard]] const std::vector<Dart>& rotation(VertexId v) const;
    [[nodiscard]] int degree(VertexId v) const;  // loops count twice
    [[nodiscard]] VertexId dart_vertex(Dart d) const { return edge(d.edge).endpoint(d.end); }

    [[nodiscard]] std::size_t num_vertices() const { return num_vertices_; }
    [[nodiscard]] std::size_t num_edges() const { return num_edges_; }
    /// Present vertices, ascending.
    [[nodiscard]] std::vector<VertexId> vertices() const;
    /// Present edges, ascending by id.
    [[nodiscard]] std::vector<Edge> edges() const;
    [[nodiscard]] std::vector<EdgeId> edge_ids() const;
    [[nodiscard]] VertexId vertex_capacity() const { return static_cast<VertexId>(present_.size()); }
    [[nodiscard]] EdgeId edge_capacity() const { return static_cast<EdgeId>(edge_slots_.size()); }
    [[nodiscard]] const std::map<VertexId, std::string>& labels() const { return labels_; }

    [[nodiscard]] bool is_connected() const;
    [[nodiscard]] bool has_self_loop() const;
    /// Throws GraphError if a dart is missing, duplicated, or misplaced.
    void validate_rotation() const;

    /// Merge the endpoints of e into the lower id, splicing the two
    /// rotations at e so the embedding stays planar. Loops are refused.
    [[nodiscard]] EmbeddedMultiGraph contract(EdgeId e) const;
    [[nodiscard]] EmbeddedMultiGraph remove(EdgeId e) const;
    void contract_in_place(EdgeId e);
    void remove_in_place(EdgeId e);

    /// Induced subgraph on `keep`, with the rotation restricted to kept darts.
    [[nodiscard]] EmbeddedMultiGraph induced(std::span<const VertexId> keep) const;

    friend bool operator==(const EmbeddedMultiGraph&, const EmbeddedMultiGraph&) = default;

private:
    void ensure_vertex_slot(VertexId v);
    void ensure_edge_slot(EdgeId e);
    void erase_dart(VertexId at, Dart d);

    std::vector<char> present_;
    std::vector<std::vector<Dart>> rotation_;
    std::vector<std::optional<Edge>> edge_slots_;
    std::map<VertexId, std::string> labels_;
    std::size_t num_vertices_ = 0;
    std::size_t num_edges_ = 0;
};

struct Face {
    FaceId id = -1;
    std::vector<Dart> boundary;  // closed walk, in tracing order
    [[nodiscard]] int degree() const { return static_cast<int>(boundary.size()); }
};

struct DualGraph {
    std::vector<Face> faces;
    /// edge id -> (face of dart end 0, face of dart end 1)
    std::map<EdgeId, std::pair<FaceId, FaceId>> dual_edges;

    [[nodiscard]] int face_degree(FaceId f) const { return faces.at(static_cast<std::size_t>(f)).degree(); }
    [[nodiscard]] std::size_t num_faces() const { return faces.size(); }
};

/// Walk faces with the rule next = rotation-successor of the twin dart.
/// A graph with no edges has exactly one face of degree 0.
DualGraph trace_faces(const EmbeddedMultiGraph& g);

EmbeddedMultiGraph contract_edge(const EmbeddedMultiGraph& g, EdgeId e);
EmbeddedMultiGraph delete_edge(const EmbeddedMultiGraph& g, EdgeId e);

struct DegreeViolation {
    std::string element;  // "vertex", "face", "self-loop", "dual-self-loop", "disconnected"
    int id = -1;
    int degree = 0;
};

struct BoundednessCertificate {
    int k1 = 0;
    int k2 = 0;
    VertexId v0 = -1;
    FaceId f0 = -1;
    bool holds = false;
    std::vector<DegreeViolation> violations;
    /// Only the embedding that was supplied is examined.
    std::string scope = "given-embedding";
};

BoundednessCertificate check_bounded(const EmbeddedMultiGraph& g, int k1, int k2);

/// w columns by h rows; vertex id = row * w + col. Rotation order N, E, S, W.
EmbeddedMultiGraph make_grid(int w, int h);

}  // namespace sptree
