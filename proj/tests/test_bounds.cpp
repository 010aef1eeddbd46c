#include <doctest.h>

#include <cmath>

#include "sptree/bounds.hpp"
#include "sptree/fixtures.hpp"
#include "sptree/spectral.hpp"

using namespace sptree;

namespace {

EnumerationOptions cap(std::size_t n) {
    EnumerationOptions o;
    o.max_vertices = n;
    return o;
}

}  // namespace

TEST_CASE("lambda") {
    const double l = lambda(4, 4, 1.0, 0.001);
    CHECK(l >= 7.22);
    CHECK(l <= 7.24);
    CHECK(lambda(6, 4, 1.0, 0.01) == doctest::Approx(11.415352).epsilon(1e-7));
    // independent form: log_{c2}(c1 / alpha) + eps
    CHECK(lambda(5, 3, 2.0, 0.2) == doctest::Approx(std::log(1.0 / 12.0) / std::log(0.8) + 0.2));
    CHECK(lambda(4, 4, 2.0, 0.1) > lambda(4, 4, 1.0, 0.1));
    CHECK(lambda(4, 5, 1.0, 0.1) > lambda(4, 4, 1.0, 0.1));
    CHECK(lambda(4, 4, 1.0, 0.5) - lambda(4, 4, 1.0, 0.1) == doctest::Approx(0.4));
    CHECK_THROWS_AS(lambda(1, 4, 1.0, 0.1), BoundsError);
    CHECK_THROWS_AS(lambda(4, 0, 1.0, 0.1), BoundsError);
    CHECK_THROWS_AS(lambda(4, 4, 0.5, 0.1), BoundsError);
    CHECK_THROWS_AS(lambda(4, 4, 1.0, 0.0), BoundsError);
}

TEST_CASE("deletion constants") {
    for (int k = 2; k <= 10; ++k) {
        CHECK(deletion_c1(k) == make_rational(1, 2 * k));
        CHECK(deletion_c2(k) == make_rational(k - 1, k));
        CHECK(deletion_c1(k) <= deletion_c2(k));
    }
}

TEST_CASE("score deletion set leaves exactly the district trees") {
    const auto ex = fixtures::region_map();
    for (const auto& p : {ex.compact_districts, ex.tree_districts}) {
        const auto doomed = score_deletion_set(ex.graph, p);
        CHECK(doomed.size() == cut_edges(ex.graph, p).size() - 2);
        EmbeddedMultiGraph rest = ex.graph;
        for (EdgeId e : doomed) rest.remove_in_place(e);
        CHECK(spanning_tree_number(rest) == spanning_tree_score(ex.graph, p));
    }
}

TEST_CASE("score bounds on every 2-partition of the 4x4 grid") {
    const auto r = verify_eq4_all(make_grid(4, 4), 2, 4, 4);
    CHECK(r.instances_checked == 70);
    CHECK(r.applicable == 70);
    CHECK(r.ok());
    CHECK(r.min_margin > 0.0);
}

TEST_CASE("score bounds on 3-partitions of a 4x3 grid") {
    const auto r = verify_eq4_all(make_grid(4, 3), 3, 4, 4);
    CHECK(r.instances_checked > 0);
    CHECK(r.ok());
}

TEST_CASE("score bounds refuse unbounded graphs") {
    const auto g = make_grid(4, 4);
    CHECK_THROWS_AS(verify_eq4(g, fixtures::grid_halves(4, 4), 3, 4), BoundsError);
    CHECK_THROWS_AS(verify_eq4(g, fixtures::grid_halves(4, 4), 1, 4), BoundsError);
    CHECK(verify_eq4(g, fixtures::grid_halves(4, 4), 4, 4).ok());
}

TEST_CASE("compactness check is vacuous on the 4x4 grid and says so") {
    const auto r = verify_theorem31(make_grid(4, 4), 2, 4, 4, 1.0, 1.0);
    CHECK(r.ok());
    CHECK(r.instances_checked == 70 * 69);
    CHECK(r.applicable == 0);
    CHECK_FALSE(r.notes.empty());
}

TEST_CASE("compactness check on a cycle") {
    const auto r = verify_theorem31(fixtures::cycle_graph(8), 2, 2, 8, 1.0, 0.5);
    CHECK(r.applicable == 0);
    CHECK(r.ok());
}

TEST_CASE("compactness check with applicable pairs") {
    // 2 x 12 ladder: splitting into rows cuts 12 edges, splitting into halves cuts 2.
    const auto g = make_grid(12, 2);
    const auto r = verify_theorem31(g, 2, 3, 4, 1.0, 0.5, cap(24));
    CHECK(r.applicable > 0);
    CHECK(r.ok());
    CHECK(r.parameters.at("chain_step_1_min_slack") != "n/a");
    for (int s = 1; s <= 8; ++s) {
        CHECK(std::stod(r.parameters.at("chain_step_" + std::to_string(s) + "_min_slack")) >= -1e-9);
    }
}

TEST_CASE("compactness check argument errors") {
    CHECK_THROWS_AS(verify_theorem31(make_grid(4, 4), 2, 4, 4, 0.5, 1.0), BoundsError);
    CHECK_THROWS_AS(verify_theorem31(make_grid(4, 4), 2, 3, 4, 1.0, 1.0), BoundsError);
}

TEST_CASE("alpha form of the compactness check") {
    const auto grid = verify_corollary(make_grid(4, 4), 2, 4, 4);
    CHECK(grid.ok());
    CHECK(grid.applicable == 0);
    REQUIRE(grid.rows.size() == 1);
    CHECK(grid.rows.front().at("pair") == "min-cut vs max-cut");
    CHECK(grid.rows.front().at("cut1") == "4");

    const auto ladder = verify_corollary(make_grid(14, 2), 2, 3, 4, cap(28));
    CHECK(ladder.applicable > 0);
    CHECK(ladder.ok());
    CHECK(ladder.rows.front().at("alpha_at_least_1") == "true");

    CHECK_THROWS_AS(verify_corollary(make_grid(4, 4), 2, 1, 4), BoundsError);
}

TEST_CASE("lemma runs on a bounded grid") {
    const auto g = make_grid(4, 4);
    const auto del = verify_lemma32_runs(g, 4, 4, 40, 5, RunKind::deletions_only);
    CHECK(del.ok());
    CHECK(del.parameters.at("statement") == "2");
    const auto mixed = verify_lemma32_runs(g, 4, 4, 40, 5, RunKind::alg1);
    CHECK(mixed.ok());
    CHECK(mixed.parameters.at("statement") == "1");
    CHECK(std::stol(mixed.parameters.at("runs_with_p_outside_band")) > 0);
    CHECK_THROWS_AS(verify_lemma32_runs(fixtures::loopy_triangle(), 4, 4, 1, 1, RunKind::alg1), BoundsError);
}

TEST_CASE("claim names") {
    CHECK(claim_name(Claim::eq4) == "eq4");
    CHECK(claim_name(Claim::theorem31) == "theorem31");
}
