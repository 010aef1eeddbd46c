#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "sptree/fixtures.hpp"
#include "sptree/graph.hpp"
#include "sptree/graph_io.hpp"

using namespace sptree;

namespace {

int euler(const EmbeddedMultiGraph& g) {
    return static_cast<int>(g.num_vertices()) - static_cast<int>(g.num_edges()) +
           static_cast<int>(trace_faces(g).num_faces());
}

int degree_sum(const DualGraph& d) {
    int s = 0;
    for (const auto& f : d.faces) s += f.degree();
    return s;
}

}  // namespace

TEST_CASE("grid faces") {
    for (int w = 1; w <= 5; ++w) {
        for (int h = 1; h <= 4; ++h) {
            const auto g = make_grid(w, h);
            const auto d = trace_faces(g);
            CHECK(d.num_faces() == static_cast<std::size_t>((w - 1) * (h - 1) + 1));
            CHECK(degree_sum(d) == 2 * static_cast<int>(g.num_edges()));
            CHECK(euler(g) == 2);
        }
    }
    const auto d = trace_faces(make_grid(4, 3));
    std::vector<int> degs;
    for (const auto& f : d.faces) degs.push_back(f.degree());
    std::sort(degs.begin(), degs.end());
    CHECK(degs.back() == 2 * 3 + 2 * 2);
    CHECK(std::count(degs.begin(), degs.end(), 4) == 6);
}

TEST_CASE("multigraph fixtures are planar") {
    CHECK(euler(fixtures::loopy_triangle()) == 2);
    CHECK(trace_faces(fixtures::loopy_triangle()).num_faces() == 4);
    CHECK(euler(fixtures::bundle(5)) == 2);
    CHECK(trace_faces(fixtures::bundle(5)).num_faces() == 5);
    CHECK(euler(fixtures::complete_graph(4)) == 2);
    CHECK(euler(fixtures::region_map().graph) == 2);
    CHECK(euler(fixtures::diamond().graph) == 2);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) CHECK(euler(fixtures::random_planar(4, 3, seed)) == 2);
}

TEST_CASE("region map faces") {
    const auto d = trace_faces(fixtures::region_map().graph);
    CHECK(d.num_faces() == 12);
    std::vector<int> degs;
    for (const auto& f : d.faces) degs.push_back(f.degree());
    std::sort(degs.begin(), degs.end());
    CHECK(degs.back() == 11);
    CHECK(std::count(degs.begin(), degs.end(), 3) == 11);
}

TEST_CASE("loop faces") {
    const auto g = fixtures::loopy_triangle();
    const auto d = trace_faces(g);
    // The loop bounds a face of degree 1 and sits in the outer face.
    const auto [fa, fb] = d.dual_edges.at(4);
    CHECK(fa != fb);
    CHECK(std::min(d.face_degree(fa), d.face_degree(fb)) == 1);
    CHECK(g.degree(2) == 4);
    CHECK(g.has_self_loop());
}

TEST_CASE("contraction keeps the lower id and stays planar") {
    const auto g = make_grid(3, 3);
    const auto before = trace_faces(g);
    for (EdgeId e : g.edge_ids()) {
        const Edge ed = g.edge(e);
        const auto h = g.contract(e);
        CHECK(h.has_vertex(std::min(ed.u, ed.v)));
        CHECK_FALSE(h.has_vertex(std::max(ed.u, ed.v)));
        CHECK_FALSE(h.has_edge(e));
        CHECK(h.num_edges() == g.num_edges() - 1);
        CHECK(h.degree(std::min(ed.u, ed.v)) == g.degree(ed.u) + g.degree(ed.v) - 2);
        h.validate_rotation();
        CHECK(euler(h) == 2);
        CHECK(trace_faces(h).num_faces() == before.num_faces());
    }
}

TEST_CASE("contraction of a triangle edge makes parallel edges") {
    auto g = fixtures::complete_graph(3);
    g.contract_in_place(0);
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 2);
    CHECK(trace_faces(g).num_faces() == 2);
    // Contracting one of two parallel edges leaves a loop.
    g.contract_in_place(g.edge_ids().front());
    CHECK(g.has_self_loop());
    CHECK(trace_faces(g).num_faces() == 2);
    CHECK_THROWS_AS((void)g.contract(g.edge_ids().front()), GraphError);
}

TEST_CASE("deletion merges the two side faces") {
    const auto g = make_grid(3, 3);
    const auto d = trace_faces(g);
    for (EdgeId e : g.edge_ids()) {
        const auto [fa, fb] = d.dual_edges.at(e);
        const auto h = g.remove(e);
        const auto dh = trace_faces(h);
        CHECK(dh.num_faces() == d.num_faces() - 1);
        std::vector<int> degs;
        for (const auto& f : dh.faces) degs.push_back(f.degree());
        CHECK(std::count(degs.begin(), degs.end(), d.face_degree(fa) + d.face_degree(fb) - 2) >= 1);
        CHECK(h.is_connected());
    }
}

TEST_CASE("edge ids are stable") {
    auto g = make_grid(3, 2);
    const auto ids = g.edge_ids();
    g.remove_in_place(ids[1]);
    g.contract_in_place(ids[0]);
    auto rest = g.edge_ids();
    CHECK(rest.size() == ids.size() - 2);
    for (EdgeId e : rest) CHECK(std::find(ids.begin(), ids.end(), e) != ids.end());
}

TEST_CASE("rotation validation") {
    EmbeddedMultiGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 0, 1);
    g.add_edge(1, 0, 1);
    CHECK_THROWS_AS(g.set_rotation(0, {{0, 0}}), GraphError);
    CHECK_THROWS_AS(g.set_rotation(0, {{0, 0}, {0, 0}}), GraphError);
    CHECK_THROWS_AS(g.set_rotation(0, {{0, 0}, {1, 1}}), GraphError);
    CHECK_NOTHROW(g.set_rotation(0, {{1, 0}, {0, 0}}));
}

TEST_CASE("disconnected graphs") {
    EmbeddedMultiGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    CHECK_FALSE(g.is_connected());
    CHECK_THROWS_AS(trace_faces(g), GraphError);
    EmbeddedMultiGraph single;
    single.add_vertex(0);
    CHECK(trace_faces(single).num_faces() == 1);
    CHECK(trace_faces(single).face_degree(0) == 0);
}

TEST_CASE("bounded certificate") {
    const auto g = make_grid(4, 4);
    const auto ok = check_bounded(g, 4, 4);
    CHECK(ok.holds);
    CHECK(ok.violations.empty());
    CHECK(ok.scope == "given-embedding");
    CHECK(trace_faces(g).face_degree(ok.f0) == 12);

    const auto tight = check_bounded(g, 3, 4);
    CHECK_FALSE(tight.holds);
    CHECK(std::count_if(tight.violations.begin(), tight.violations.end(),
                        [](const DegreeViolation& v) { return v.element == "vertex"; }) == 3);

    const auto loops = check_bounded(fixtures::loopy_triangle(), 10, 10);
    CHECK_FALSE(loops.holds);
    CHECK(std::any_of(loops.violations.begin(), loops.violations.end(),
                      [](const DegreeViolation& v) { return v.element == "self-loop"; }));

    // A bridge is a loop in the dual.
    const auto path = check_bounded(fixtures::path_graph(3), 10, 10);
    CHECK_FALSE(path.holds);
    CHECK(std::any_of(path.violations.begin(), path.violations.end(),
                      [](const DegreeViolation& v) { return v.element == "dual-self-loop"; }));
}

TEST_CASE("json round trip") {
    for (const auto& g : {make_grid(3, 4), fixtures::loopy_triangle(), fixtures::region_map().graph, fixtures::bundle(3)}) {
        const auto back = graph_from_json(graph_to_json(g));
        CHECK(back == g);
        CHECK(trace_faces(back).num_faces() == trace_faces(g).num_faces());
    }
}

TEST_CASE("json rejects broken documents") {
    auto doc = graph_to_json(make_grid(2, 2));
    auto bad = doc;
    bad["rotation"]["0"] = nlohmann::json::array({0});
    CHECK_THROWS(graph_from_json(bad));
    bad = doc;
    bad["edges"].push_back({{"id", 9}, {"u", 0}, {"v", 7}});
    CHECK_THROWS(graph_from_json(bad));
}
