#include "sptree/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "sptree/rng.hpp"
#include "sptree/sampler.hpp"

namespace sptree::fixtures {

void embed_by_angles(EmbeddedMultiGraph& g, const std::vector<std::pair<double, double>>& coords) {
    for (VertexId v : g.vertices()) {
        std::vector<std::pair<double, Dart>> around;
        for (const Dart& d : g.rotation(v)) {
            const Edge& e = g.edge(d.edge);
            if (e.is_loop()) throw GraphError("embed_by_angles: loops are not supported");
            const auto [x0, y0] = coords.at(static_cast<std::size_t>(v));
            const auto [x1, y1] = coords.at(static_cast<std::size_t>(e.other(v)));
            around.push_back({std::atan2(y1 - y0, x1 - x0), d});
        }
        std::sort(around.begin(), around.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<Dart> order;
        for (const auto& [angle, d] : around) order.push_back(d);
        g.set_rotation(v, std::move(order));
    }
}

EmbeddedMultiGraph path_graph(int n) {
    if (n < 1) throw GraphError("path needs at least one vertex");
    EmbeddedMultiGraph g;
    for (VertexId v = 0; v < n; ++v) g.add_vertex(v);
    for (EdgeId e = 0; e + 1 < n; ++e) g.add_edge(e, e, e + 1);
    return g;
}

EmbeddedMultiGraph cycle_graph(int k) {
    if (k == 2) return bundle(2);
    if (k < 3) throw GraphError("cycle needs k >= 2");
    EmbeddedMultiGraph g;
    std::vector<std::pair<double, double>> coords;
    for (VertexId v = 0; v < k; ++v) {
        g.add_vertex(v);
        const double t = 2.0 * M_PI * v / k;
        coords.push_back({std::cos(t), std::sin(t)});
    }
    for (EdgeId e = 0; e < k; ++e) g.add_edge(e, e, (e + 1) % k);
    embed_by_angles(g, coords);
    return g;
}

EmbeddedMultiGraph bundle(int k) {
    if (k < 1) throw GraphError("bundle needs k >= 1");
    EmbeddedMultiGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    std::vector<Dart> at0;
    std::vector<Dart> at1;
    for (EdgeId e = 0; e < k; ++e) {
        g.add_edge(e, 0, 1);
        at0.push_back({e, 0});
        at1.insert(at1.begin(), Dart{e, 1});
    }
    g.set_rotation(0, at0);
    g.set_rotation(1, at1);
    return g;
}

EmbeddedMultiGraph complete_graph(int n) {
    if (n < 1) throw GraphError("complete graph needs n >= 1");
    EmbeddedMultiGraph g;
    for (VertexId v = 0; v < n; ++v) g.add_vertex(v);
    EdgeId next = 0;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) g.add_edge(next++, u, v);
    }
    if (n <= 4) {
        // Vertex 0 in the middle of the triangle 1, 2, 3.
        std::vector<std::pair<double, double>> coords{{0.0, 0.0}, {0.0, 2.0}, {-1.7, -1.0}, {1.7, -1.0}};
        coords.resize(static_cast<std::size_t>(n));
        if (n == 3) coords[0] = {0.0, -1.0};
        embed_by_angles(g, coords);
    }
    return g;
}

EmbeddedMultiGraph loopy_triangle() {
    EmbeddedMultiGraph g;
    for (VertexId v = 0; v < 3; ++v) g.add_vertex(v);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 1, 2);
    g.add_edge(2, 2, 0);
    g.add_edge(3, 0, 1);  // parallel to edge 0, drawn outside it
    g.add_edge(4, 2, 2);  // loop at vertex 2, drawn in the outer face
    g.set_rotation(0, {{2, 1}, {0, 0}, {3, 0}});
    g.set_rotation(1, {{3, 1}, {0, 1}, {1, 0}});
    g.set_rotation(2, {{1, 1}, {2, 0}, {4, 0}, {4, 1}});
    g.validate_rotation();
    return g;
}

EmbeddedMultiGraph random_planar(int w, int h, std::uint64_t seed, double diagonal_p, double delete_p) {
    if (w < 2 || h < 2) throw GraphError("random planar graph needs a grid of at least 2 x 2");
    Rng rng(seed);
    auto coin = [&rng](double p) { return rng.bernoulli(p); };
    std::vector<std::pair<VertexId, VertexId>> pairs;
    auto id = [w](int r, int c) { return static_cast<VertexId>(r * w + c); };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (c + 1 < w) pairs.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < h) pairs.push_back({id(r, c), id(r + 1, c)});
            if (r + 1 < h && c + 1 < w && coin(diagonal_p)) {
                if (coin(0.5)) {
                    pairs.push_back({id(r, c), id(r + 1, c + 1)});
                } else {
                    pairs.push_back({id(r, c + 1), id(r + 1, c)});
                }
            }
        }
    }
    EmbeddedMultiGraph g;
    std::vector<std::pair<double, double>> coords;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            g.add_vertex(id(r, c));
            coords.push_back({static_cast<double>(c), -static_cast<double>(r)});
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) g.add_edge(static_cast<EdgeId>(i), pairs[i].first, pairs[i].second);
    embed_by_angles(g, coords);
    for (EdgeId e : g.edge_ids()) {
        if (coin(delete_p) && !is_bridge(g, e)) g.remove_in_place(e);
    }
    // Renumber the surviving edges 0..|E|-1, keeping the rotation.
    EmbeddedMultiGraph out;
    std::vector<EdgeId> renumber(static_cast<std::size_t>(g.edge_capacity()), -1);
    EdgeId next = 0;
    for (VertexId v : g.vertices()) out.add_vertex(v);
    for (const Edge& e : g.edges()) {
        renumber[static_cast<std::size_t>(e.id)] = next;
        out.add_edge(next++, e.u, e.v);
    }
    for (VertexId v : g.vertices()) {
        std::vector<Dart> order;
        for (const Dart& d : g.rotation(v)) order.push_back({renumber[static_cast<std::size_t>(d.edge)], d.end});
        out.set_rotation(v, std::move(order));
    }
    return out;
}

Partition grid_halves(int w, int h) {
    if (w % 2 != 0) throw GraphError("grid_halves needs an even width");
    Partition p;
    p.m = 2;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) p.assignment[r * w + c] = c < w / 2 ? 0 : 1;
    }
    return p;
}

namespace {

Partition three_way(const std::vector<std::vector<VertexId>>& districts) {
    Partition p;
    p.m = static_cast<int>(districts.size());
    for (std::size_t d = 0; d < districts.size(); ++d) {
        for (VertexId v : districts[d]) p.assignment[v] = static_cast<int>(d);
    }
    return canonical(p);
}

}  // namespace

RegionMap region_map() {
    static const std::vector<std::pair<VertexId, VertexId>> edges{
        {0, 2}, {0, 3}, {0, 6}, {1, 6}, {1, 9}, {2, 3},  {2, 4},  {3, 4},  {3, 5},  {3, 6},  {4, 5},
        {4, 7}, {5, 6}, {5, 7}, {5, 8}, {5, 9}, {6, 9}, {7, 8}, {7, 10}, {8, 10}, {8, 11}, {10, 11}};
    // Counter-clockwise edge ids around each vertex.
    static const std::vector<std::vector<EdgeId>> rotation{
        {0, 1, 2},      {3, 4},           {6, 5, 0},    {7, 8, 9, 1, 5}, {11, 10, 7, 6}, {10, 13, 14, 15, 12, 8},
        {12, 16, 3, 2, 9}, {18, 17, 13, 11}, {19, 20, 14, 17}, {4, 16, 15},  {21, 19, 18},   {20, 21}};
    RegionMap ex;
    for (VertexId v = 0; v < 12; ++v) ex.graph.add_vertex(v);
    for (std::size_t e = 0; e < edges.size(); ++e) ex.graph.add_edge(static_cast<EdgeId>(e), edges[e].first, edges[e].second);
    for (VertexId v = 0; v < 12; ++v) {
        std::vector<Dart> order;
        for (EdgeId e : rotation[static_cast<std::size_t>(v)]) {
            order.push_back({e, static_cast<std::uint8_t>(edges[static_cast<std::size_t>(e)].first == v ? 0 : 1)});
        }
        ex.graph.set_rotation(v, std::move(order));
    }
    ex.tree_districts = three_way({{0, 1, 2, 6}, {3, 4, 7, 10}, {5, 8, 9, 11}});
    ex.compact_districts = three_way({{2, 3, 4, 5}, {0, 1, 6, 9}, {7, 8, 10, 11}});
    return ex;
}

Diamond diamond() {
    Diamond ex;
    for (VertexId v = 0; v < 4; ++v) ex.graph.add_vertex(v);
    ex.graph.add_edge(0, 0, 1);  // shared edge of the two triangles
    ex.graph.add_edge(1, 0, 2);
    ex.graph.add_edge(2, 1, 2);
    ex.graph.add_edge(3, 0, 3);
    ex.graph.add_edge(4, 1, 3);
    embed_by_angles(ex.graph, {{0.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}});
    ex.a = 0;
    ex.b = 2;
    ex.ab = 1;
    return ex;
}

}  // namespace sptree::fixtures
