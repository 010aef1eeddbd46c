#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sptree/fixtures.hpp"
#include "sptree/linalg.hpp"
#include "sptree/spectral.hpp"

using namespace sptree;

TEST_CASE("tree counts against brute force") {
    std::vector<EmbeddedMultiGraph> graphs{make_grid(2, 2), make_grid(3, 2), make_grid(3, 3), fixtures::complete_graph(4),
                                           fixtures::bundle(4), fixtures::loopy_triangle(), fixtures::cycle_graph(6),
                                           fixtures::diamond().graph, fixtures::path_graph(5)};
    for (std::uint64_t s = 1; s <= 8; ++s) graphs.push_back(fixtures::random_planar(3, 3, s));
    for (const auto& g : graphs) {
        CHECK(spanning_tree_number(g) == BigInt(static_cast<long>(oracle::spanning_trees(g).size())));
    }
}

TEST_CASE("known tree counts") {
    CHECK(spanning_tree_number(fixtures::complete_graph(4)) == 16);
    CHECK(spanning_tree_number(fixtures::complete_graph(6)) == 1296);
    CHECK(spanning_tree_number(make_grid(3, 3)) == 192);
    CHECK(spanning_tree_number(make_grid(4, 4)) == 100352);
    CHECK(spanning_tree_number(make_grid(5, 5)) == 557568000);
    CHECK(spanning_tree_number(fixtures::cycle_graph(9)) == 9);
    CHECK(spanning_tree_number(fixtures::bundle(7)) == 7);
}

TEST_CASE("disconnected graph has no trees") {
    EmbeddedMultiGraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    CHECK(spanning_tree_number(g) == 0);
}

TEST_CASE("large graphs fall back to a log determinant") {
    SpectralOptions opts;
    opts.exact_count_max_vertices = 10;
    const auto approx = count_spanning_trees(make_grid(5, 5), opts);
    CHECK_FALSE(approx.exact);
    CHECK(approx.log_value == doctest::Approx(std::log(557568000.0)).epsilon(1e-10));
    const auto exact = count_spanning_trees(make_grid(5, 5));
    CHECK(exact.exact);
    CHECK(exact.value == 557568000);
}

TEST_CASE("bareiss overflow fallback") {
    // 7x7 grid: the fast path overflows int64 and must restart on GMP.
    const auto g = make_grid(7, 7);
    const linalg::VertexIndex index(g);
    const auto reduced = linalg::without(linalg::laplacian(g, index), 0);
    CHECK(linalg::bareiss_determinant(reduced) == linalg::bareiss_determinant_big(reduced));
    CHECK(linalg::bareiss_determinant(reduced) == BigInt("19872369301840986112"));
}

TEST_CASE("deletion-contraction") {
    const auto g = fixtures::random_planar(3, 3, 5);
    for (EdgeId e : g.edge_ids()) {
        CHECK(spanning_tree_number(g) == spanning_tree_number(g.remove(e)) + spanning_tree_number(g.contract(e)));
    }
}

TEST_CASE("diamond resistance") {
    const auto ex = fixtures::diamond();
    const auto trees = oracle::spanning_trees(ex.graph);
    CHECK(trees.size() == 8);
    long with = 0;
    for (const auto& t : trees) with += std::count(t.begin(), t.end(), ex.ab);
    CHECK(with == 5);
    const auto r = effective_resistance(ex.graph, ex.ab, ResistanceMethod::tree_ratio);
    REQUIRE(r.exact);
    CHECK(*r.exact == make_rational(5, 8));
    const auto solved = effective_resistance(ex.graph, ex.ab, ResistanceMethod::laplacian_solve);
    CHECK(solved.approx == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("resistance equals tree fraction") {
    for (std::uint64_t s = 11; s <= 16; ++s) {
        const auto g = fixtures::random_planar(3, 2, s);
        for (EdgeId e : g.edge_ids()) {
            const auto r = effective_resistance(g, e, ResistanceMethod::tree_ratio);
            CHECK(*r.exact == oracle::tree_fraction(g, e));
        }
    }
}

TEST_CASE("parallel edges and loops") {
    const auto b = fixtures::bundle(3);
    CHECK(*effective_resistance(b, 1, ResistanceMethod::tree_ratio).exact == make_rational(1, 3));
    const auto g = fixtures::loopy_triangle();
    CHECK(*effective_resistance(g, 4, ResistanceMethod::tree_ratio).exact == 0);
    CHECK(*effective_resistance(g, 4).exact == 0);
    CHECK(*effective_resistance(fixtures::path_graph(3), 0).exact == 1);
}

TEST_CASE("foster's theorem") {
    for (const auto& g : {make_grid(3, 3), make_grid(4, 3), fixtures::complete_graph(4), fixtures::region_map().graph}) {
        Rational total = 0;
        double approx = 0.0;
        for (EdgeId e : g.edge_ids()) {
            total += *effective_resistance(g, e, ResistanceMethod::tree_ratio).exact;
            approx += effective_resistance(g, e, ResistanceMethod::laplacian_solve).approx;
        }
        CHECK(total == static_cast<long>(g.num_vertices() - 1));
        CHECK(approx == doctest::Approx(static_cast<double>(g.num_vertices() - 1)).epsilon(1e-10));
    }
}

TEST_CASE("rayleigh monotonicity") {
    const auto g = make_grid(3, 3);
    for (EdgeId cut : g.edge_ids()) {
        const auto h = g.remove(cut);
        if (!h.is_connected()) continue;
        for (EdgeId e : h.edge_ids()) {
            CHECK(*effective_resistance(h, e, ResistanceMethod::tree_ratio).exact >=
                  *effective_resistance(g, e, ResistanceMethod::tree_ratio).exact);
        }
    }
}

TEST_CASE("cycle and degree bounds") {
    const auto g = make_grid(3, 3);
    auto find = [&g](VertexId x, VertexId y) {
        for (const Edge& e : g.edges()) {
            if ((e.u == x && e.v == y) || (e.u == y && e.v == x)) return e.id;
        }
        return EdgeId{-1};
    };
    const std::vector<EdgeId> square{find(0, 1), find(1, 4), find(4, 3), find(3, 0)};
    CHECK(check_cycle_bound(g, square.front(), square));
    const std::vector<EdgeId> ring{find(0, 1), find(1, 2), find(2, 5), find(5, 8), find(8, 7), find(7, 6), find(6, 3), find(3, 0)};
    CHECK(check_cycle_bound(g, ring.front(), ring));
    for (EdgeId e : g.edge_ids()) CHECK(check_degree_bound(g, e));
}

TEST_CASE("flow solution") {
    const auto ex = fixtures::diamond();
    const auto flow = solve_flow(ex.graph, ex.a, ex.b);
    REQUIRE(flow.exact);
    CHECK(flow.voltage.at(ex.a) == make_rational(5, 8));
    CHECK(flow.voltage.at(ex.b) == 0);
    // Kirchhoff's current law at every vertex.
    std::map<VertexId, Rational> net;
    for (const auto& [e, i] : flow.current) {
        net[ex.graph.edge(e).u] -= i;
        net[ex.graph.edge(e).v] += i;
    }
    CHECK(net[ex.a] == -1);
    CHECK(net[ex.b] == 1);
    for (VertexId v : ex.graph.vertices()) {
        if (v != ex.a && v != ex.b) CHECK(net[v] == 0);
    }
}

TEST_CASE("laplacian solve agrees with exact") {
    SpectralOptions opts;
    opts.exact_resistance_max_vertices = 4;
    const auto g = make_grid(4, 4);
    for (EdgeId e : g.edge_ids()) {
        const auto exact = effective_resistance(g, e, ResistanceMethod::tree_ratio);
        const auto approx = effective_resistance(g, e, ResistanceMethod::automatic, opts);
        CHECK_FALSE(approx.exact);
        CHECK(approx.approx == doctest::Approx(exact.exact->get_d()).epsilon(1e-12));
    }
}
