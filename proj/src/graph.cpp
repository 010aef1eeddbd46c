#include "sptree/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace sptree {

namespace {

std::string vertex_str(VertexId v) { return "vertex " + std::to_string(v); }
std::string edge_str(EdgeId e) { return "edge " + std::to_string(e); }

}  // namespace

void EmbeddedMultiGraph::ensure_vertex_slot(VertexId v) {
    if (v < 0) throw GraphError("negative " + vertex_str(v));
    if (static_cast<std::size_t>(v) >= present_.size()) {
        present_.resize(static_cast<std::size_t>(v) + 1, 0);
        rotation_.resize(static_cast<std::size_t>(v) + 1);
    }
}

void EmbeddedMultiGraph::ensure_edge_slot(EdgeId e) {
    if (e < 0) throw GraphError("negative " + edge_str(e));
    if (static_cast<std::size_t>(e) >= edge_slots_.size()) edge_slots_.resize(static_cast<std::size_t>(e) + 1);
}

void EmbeddedMultiGraph::add_vertex(VertexId v) {
    ensure_vertex_slot(v);
    if (present_[static_cast<std::size_t>(v)]) throw GraphError("duplicate " + vertex_str(v));
    present_[static_cast<std::size_t>(v)] = 1;
    ++num_vertices_;
}

void EmbeddedMultiGraph::add_edge(EdgeId id, VertexId u, VertexId v) {
    if (!has_vertex(u)) throw GraphError(edge_str(id) + " references unknown " + vertex_str(u));
    if (!has_vertex(v)) throw GraphError(edge_str(id) + " references unknown " + vertex_str(v));
    ensure_edge_slot(id);
    if (edge_slots_[static_cast<std::size_t>(id)]) throw GraphError("duplicate " + edge_str(id));
    edge_slots_[static_cast<std::size_t>(id)] = Edge{id, u, v};
    rotation_[static_cast<std::size_t>(u)].push_back(Dart{id, 0});
    rotation_[static_cast<std::size_t>(v)].push_back(Dart{id, 1});
    ++num_edges_;
}

void EmbeddedMultiGraph::set_rotation(VertexId v, std::vector<Dart> order) {
    if (!has_vertex(v)) throw GraphError("rotation for unknown " + vertex_str(v));
    auto current = rotation_[static_cast<std::size_t>(v)];
    auto key = [](const Dart& d) { return std::pair{d.edge, d.end}; };
    auto less = [&](const Dart& a, const Dart& b) { return key(a) < key(b); };
    auto sorted_new = order;
    std::sort(current.begin(), current.end(), less);
    std::sort(sorted_new.begin(), sorted_new.end(), less);
    if (current != sorted_new) {
        throw GraphError("rotation at " + vertex_str(v) + " is not a permutation of its edge ends");
    }
    rotation_[static_cast<std::size_t>(v)] = std::move(order);
}

void EmbeddedMultiGraph::set_label(VertexId v, std::string label) {
    if (!has_vertex(v)) throw GraphError("label for unknown " + vertex_str(v));
    labels_[v] = std::move(label);
}

bool EmbeddedMultiGraph::has_vertex(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < present_.size() && present_[static_cast<std::size_t>(v)];
}

bool EmbeddedMultiGraph::has_edge(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < edge_slots_.size() &&
           edge_slots_[static_cast<std::size_t>(e)].has_value();
}

const Edge& EmbeddedMultiGraph::edge(EdgeId e) const {
    if (!has_edge(e)) throw GraphError("missing " + edge_str(e));
    return *edge_slots_[static_cast<std::size_t>(e)];
}

const std::vector<Dart>& EmbeddedMultiGraph::rotation(VertexId v) const {
    if (!has_vertex(v)) throw GraphError("missing " + vertex_str(v));
    return rotation_[static_cast<std::size_t>(v)];
}

int EmbeddedMultiGraph::degree(VertexId v) const { return static_cast<int>(rotation(v).size()); }

std::vector<VertexId> EmbeddedMultiGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(num_vertices_);
    for (std::size_t v = 0; v < present_.size(); ++v) {
        if (present_[v]) out.push_back(static_cast<VertexId>(v));
    }
    return out;
}

std::vector<Edge> EmbeddedMultiGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (const auto& slot : edge_slots_) {
        if (slot) out.push_back(*slot);
    }
    return out;
}

std::vector<EdgeId> EmbeddedMultiGraph::edge_ids() const {
    std::vector<EdgeId> out;
    out.reserve(num_edges_);
    for (const auto& slot : edge_slots_) {
        if (slot) out.push_back(slot->id);
    }
    return out;
}

bool EmbeddedMultiGraph::is_connected() const {
    if (num_vertices_ <= 1) return true;
    std::vector<char> seen(present_.size(), 0);
    const auto verts = vertices();
    std::queue<VertexId> frontier;
    frontier.push(verts.front());
    seen[static_cast<std::size_t>(verts.front())] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const VertexId x = frontier.front();
        frontier.pop();
        for (const Dart& d : rotation_[static_cast<std::size_t>(x)]) {
            const VertexId y = edge(d.edge).endpoint(static_cast<std::uint8_t>(1 - d.end));
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                ++reached;
                frontier.push(y);
            }
        }
    }
    return reached == num_vertices_;
}

bool EmbeddedMultiGraph::has_self_loop() const {
    return std::any_of(edge_slots_.begin(), edge_slots_.end(),
                       [](const auto& slot) { return slot && slot->is_loop(); });
}

void EmbeddedMultiGraph::validate_rotation() const {
    std::vector<int> seen(edge_slots_.size() * 2, 0);
    for (std::size_t v = 0; v < present_.size(); ++v) {
        if (!present_[v] && !rotation_[v].empty()) {
            throw GraphError("rotation entries at absent " + vertex_str(static_cast<VertexId>(v)));
        }
        for (const Dart& d : rotation_[v]) {
            if (!has_edge(d.edge)) throw GraphError("rotation references missing " + edge_str(d.edge));
            if (edge(d.edge).endpoint(d.end) != static_cast<VertexId>(v)) {
                throw GraphError(edge_str(d.edge) + " end listed at wrong " + vertex_str(static_cast<VertexId>(v)));
            }
            ++seen[static_cast<std::size_t>(d.edge) * 2 + d.end];
        }
    }
    for (const auto& slot : edge_slots_) {
        if (!slot) continue;
        for (std::uint8_t end = 0; end < 2; ++end) {
            const int count = seen[static_cast<std::size_t>(slot->id) * 2 + end];
            if (count != 1) {
                throw GraphError(edge_str(slot->id) + (count == 0 ? " end missing from rotation"
                                                                   : " end repeated in rotation"));
            }
        }
    }
}

void EmbeddedMultiGraph::erase_dart(VertexId at, Dart d) {
    auto& rot = rotation_[static_cast<std::size_t>(at)];
    auto it = std::find(rot.begin(), rot.end(), d);
    if (it == rot.end()) throw GraphError("rotation at " + vertex_str(at) + " lost an edge end");
    rot.erase(it);
}

void EmbeddedMultiGraph::remove_in_place(EdgeId e) {
    const Edge ed = edge(e);
    erase_dart(ed.u, Dart{e, 0});
    erase_dart(ed.v, Dart{e, 1});
    edge_slots_[static_cast<std::size_t>(e)].reset();
    --num_edges_;
}

void EmbeddedMultiGraph::contract_in_place(EdgeId e) {
    const Edge ed = edge(e);
    if (ed.is_loop()) throw GraphError("cannot contract self-loop " + edge_str(e));
    const VertexId keep = std::min(ed.u, ed.v);
    const VertexId gone = std::max(ed.u, ed.v);
    const Dart at_keep{e, static_cast<std::uint8_t>(ed.u == keep ? 0 : 1)};
    const Dart at_gone = at_keep.twin();

    auto& rk = rotation_[static_cast<std::size_t>(keep)];
    auto& rg = rotation_[static_cast<std::size_t>(gone)];
    const auto pk = std::find(rk.begin(), rk.end(), at_keep) - rk.begin();
    const auto pg = std::find(rg.begin(), rg.end(), at_gone) - rg.begin();

    // (d_keep, a1..ak) + (d_gone, b1..bl)  ->  (b1..bl, a1..ak)
    std::vector<Dart> merged;
    merged.reserve(rk.size() + rg.size() - 2);
    for (std::size_t i = 1; i < rg.size(); ++i) merged.push_back(rg[(static_cast<std::size_t>(pg) + i) % rg.size()]);
    for (std::size_t i = 1; i < rk.size(); ++i) merged.push_back(rk[(static_cast<std::size_t>(pk) + i) % rk.size()]);

    for (const Dart& d : rg) {
        if (d.edge == e) continue;
        auto& slot = *edge_slots_[static_cast<std::size_t>(d.edge)];
        if (d.end == 0) slot.u = keep; else slot.v = keep;
    }
    rk = std::move(merged);
    rg.clear();
    present_[static_cast<std::size_t>(gone)] = 0;
    --num_vertices_;
    if (auto it = labels_.find(gone); it != labels_.end()) labels_.erase(it);
    edge_slots_[static_cast<std::size_t>(e)].reset();
    --num_edges_;
}

EmbeddedMultiGraph EmbeddedMultiGraph::contract(EdgeId e) const {
    EmbeddedMultiGraph out = *this;
    out.contract_in_place(e);
    return out;
}

EmbeddedMultiGraph EmbeddedMultiGraph::remove(EdgeId e) const {
    EmbeddedMultiGraph out = *this;
    out.remove_in_place(e);
    return out;
}

EmbeddedMultiGraph EmbeddedMultiGraph::induced(std::span<const VertexId> keep) const {
    std::vector<char> in(present_.size(), 0);
    for (VertexId v : keep) {
        if (!has_vertex(v)) throw GraphError("induced subgraph on missing " + vertex_str(v));
        in[static_cast<std::size_t>(v)] = 1;
    }
    EmbeddedMultiGraph out;
    for (std::size_t v = 0; v < in.size(); ++v) {
        if (in[v]) out.add_vertex(static_cast<VertexId>(v));
    }
    for (const auto& slot : edge_slots_) {
        if (slot && in[static_cast<std::size_t>(slot->u)] && in[static_cast<std::size_t>(slot->v)]) {
            out.add_edge(slot->id, slot->u, slot->v);
        }
    }
    for (std::size_t v = 0; v < in.size(); ++v) {
        if (!in[v]) continue;
        std::vector<Dart> order;
        for (const Dart& d : rotation_[v]) {
            if (out.has_edge(d.edge)) order.push_back(d);
        }
        out.rotation_[v] = std::move(order);
        if (auto it = labels_.find(static_cast<VertexId>(v)); it != labels_.end()) out.labels_[it->first] = it->second;
    }
    return out;
}

DualGraph trace_faces(const EmbeddedMultiGraph& g) {
    if (g.num_vertices() == 0) throw GraphError("cannot trace faces of an empty graph");
    if (!g.is_connected()) throw GraphError("cannot trace faces of a disconnected graph");
    g.validate_rotation();

    DualGraph dual;
    if (g.num_edges() == 0) {
        dual.faces.push_back(Face{0, {}});
        return dual;
    }

    // dart -> (vertex, position in rotation)
    const auto slots = static_cast<std::size_t>(g.edge_capacity()) * 2;
    std::vector<std::pair<VertexId, std::size_t>> where(slots, {-1, 0});
    for (VertexId v : g.vertices()) {
        const auto& rot = g.rotation(v);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            where[static_cast<std::size_t>(rot[i].edge) * 2 + rot[i].end] = {v, i};
        }
    }
    auto index = [](Dart d) { return static_cast<std::size_t>(d.edge) * 2 + d.end; };
    auto next = [&](Dart d) {
        const Dart t = d.twin();
        const auto [v, pos] = where[index(t)];
        const auto& rot = g.rotation(v);
        return rot[(pos + 1) % rot.size()];
    };

    std::vector<FaceId> face_of(slots, -1);
    for (VertexId v : g.vertices()) {
        for (const Dart& start : g.rotation(v)) {
            if (face_of[index(start)] != -1) continue;
            Face face{static_cast<FaceId>(dual.faces.size()), {}};
            Dart d = start;
            do {
                face_of[index(d)] = face.id;
                face.boundary.push_back(d);
                d = next(d);
            } while (!(d == start));
            dual.faces.push_back(std::move(face));
        }
    }
    for (const Edge& e : g.edges()) {
        dual.dual_edges[e.id] = {face_of[index(Dart{e.id, 0})], face_of[index(Dart{e.id, 1})]};
    }
    return dual;
}

EmbeddedMultiGraph contract_edge(const EmbeddedMultiGraph& g, EdgeId e) { return g.contract(e); }

EmbeddedMultiGraph delete_edge(const EmbeddedMultiGraph& g, EdgeId e) { return g.remove(e); }

BoundednessCertificate check_bounded(const EmbeddedMultiGraph& g, int k1, int k2) {
    BoundednessCertificate cert;
    cert.k1 = k1;
    cert.k2 = k2;
    if (g.num_vertices() == 0 || !g.is_connected()) {
        cert.violations.push_back({"disconnected", -1, 0});
        return cert;
    }
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) cert.violations.push_back({"self-loop", e.id, 2});
    }

    const auto verts = g.vertices();
    cert.v0 = verts.front();
    for (VertexId v : verts) {
        if (g.degree(v) > g.degree(cert.v0)) cert.v0 = v;
    }
    for (VertexId v : verts) {
        if (v != cert.v0 && g.degree(v) > k1) cert.violations.push_back({"vertex", v, g.degree(v)});
    }

    const DualGraph dual = trace_faces(g);
    for (const auto& [eid, lr] : dual.dual_edges) {
        if (lr.first == lr.second) cert.violations.push_back({"dual-self-loop", eid, 2});
    }
    cert.f0 = 0;
    for (const Face& f : dual.faces) {
        if (f.degree() > dual.face_degree(cert.f0)) cert.f0 = f.id;
    }
    for (const Face& f : dual.faces) {
        if (f.id != cert.f0 && f.degree() > k2) cert.violations.push_back({"face", f.id, f.degree()});
    }
    cert.holds = cert.violations.empty();
    return cert;
}

EmbeddedMultiGraph make_grid(int w, int h) {
    if (w < 1 || h < 1) throw GraphError("grid dimensions must be positive");
    EmbeddedMultiGraph g;
    auto id = [w](int r, int c) { return static_cast<VertexId>(r * w + c); };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) g.add_vertex(id(r, c));
    }
    // east[r][c] / south[r][c] edge ids
    std::vector<EdgeId> east(static_cast<std::size_t>(w * h), -1);
    std::vector<EdgeId> south(static_cast<std::size_t>(w * h), -1);
    EdgeId next = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (c + 1 < w) {
                east[static_cast<std::size_t>(id(r, c))] = next;
                g.add_edge(next++, id(r, c), id(r, c + 1));
            }
            if (r + 1 < h) {
                south[static_cast<std::size_t>(id(r, c))] = next;
                g.add_edge(next++, id(r, c), id(r + 1, c));
            }
        }
    }
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            std::vector<Dart> order;
            if (r > 0) order.push_back({south[static_cast<std::size_t>(id(r - 1, c))], 1});
            if (c + 1 < w) order.push_back({east[static_cast<std::size_t>(id(r, c))], 0});
            if (r + 1 < h) order.push_back({south[static_cast<std::size_t>(id(r, c))], 0});
            if (c > 0) order.push_back({east[static_cast<std::size_t>(id(r, c - 1))], 1});
            g.set_rotation(id(r, c), std::move(order));
        }
    }
    return g;
}

}  // namespace sptree
