#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sptree/fixtures.hpp"
#include "sptree/recom.hpp"
#include "sptree/report_io.hpp"

using namespace sptree;

namespace {

Partition halves_of_path() {
    Partition p;
    p.m = 2;
    p.assignment = {{0, 0}, {1, 0}, {2, 1}, {3, 1}};
    return p;
}

}  // namespace

TEST_CASE("2x2 grid visits both splits evenly") {
    const auto g = make_grid(2, 2);
    ChainConfig cfg;
    cfg.steps = 4000;
    cfg.seed = 3;
    const auto stats = run_chain(g, fixtures::grid_halves(2, 2), cfg);
    CHECK(stats.partition_counts.size() == 2);
    CHECK(stats.skipped == 0);
    CHECK(stats.acceptance == 1.0);
    for (const auto& [h, c] : stats.partition_counts) CHECK(std::abs(c - 2000.5) < 200);
    CHECK(stats.histogram.size() == 1);
    CHECK(stats.histogram.begin()->first == 2);
    CHECK(tv_distance(stats, spanning_tree_distribution(g, 2)) < 0.05);
}

TEST_CASE("path has a single balanced split") {
    const auto g = fixtures::path_graph(4);
    ChainConfig cfg;
    cfg.steps = 50;
    cfg.seed = 1;
    for (auto sampler : {TreeSampler::wilson, TreeSampler::alg1}) {
        cfg.sampler = sampler;
        const auto stats = run_chain(g, halves_of_path(), cfg);
        CHECK(stats.partition_counts.size() == 1);
        CHECK(stats.final_partition == canonical(halves_of_path()));
    }
}

TEST_CASE("step errors") {
    const auto g = make_grid(2, 2);
    Rng rng(1);
    Partition one;
    one.m = 1;
    for (VertexId v = 0; v < 4; ++v) one.assignment[v] = 0;
    CHECK_THROWS_AS(recom_step(g, one, rng, {}), ChainError);
    Partition broken;
    broken.m = 2;
    broken.assignment = {{0, 0}, {3, 0}, {1, 1}, {2, 1}};  // diagonal districts are disconnected
    CHECK_THROWS_AS(recom_step(g, broken, rng, {}), ChainError);
    ChainConfig bad;
    bad.steps = -1;
    CHECK_THROWS_AS(run_chain(g, fixtures::grid_halves(2, 2), bad), ChainError);
}

TEST_CASE("chain stays valid on the 4x4 grid") {
    const auto g = make_grid(4, 4);
    Rng rng(77);
    ChainConfig cfg;
    Partition p = fixtures::grid_halves(4, 4);
    std::set<std::string> seen;
    for (int step = 0; step < 2000; ++step) {
        const auto r = recom_step(g, p, rng, cfg);
        if (r.skipped) continue;
        CHECK(r.district_a < r.district_b);
        CHECK(r.candidate_cuts >= 1);
        p = r.partition;
        REQUIRE(validate_partition(g, p).valid);
        CHECK(canonical(p) == p);
        seen.insert(partition_hash(p));
    }
    // enumerated set is the reference for which hashes may appear
    std::set<std::string> all;
    for (const auto& q : enumerate_partitions(g, 2)) all.insert(partition_hash(q));
    for (const auto& h : seen) CHECK(all.count(h) == 1);
    CHECK(seen.size() > 30);
}

TEST_CASE("four districts") {
    const auto g = make_grid(4, 4);
    Partition p;
    p.m = 4;
    for (VertexId v = 0; v < 16; ++v) p.assignment[v] = v / 4;
    ChainConfig cfg;
    cfg.steps = 500;
    cfg.seed = 12;
    Rng rng(cfg.seed);
    for (int i = 0; i < 500; ++i) {
        const auto r = recom_step(g, p, rng, cfg);
        if (!r.skipped) p = r.partition;
        CHECK(validate_partition(g, p).valid);
    }
}

TEST_CASE("tolerance allows uneven splits") {
    const auto g = make_grid(3, 3);
    Partition p;
    p.m = 2;
    for (VertexId v = 0; v < 9; ++v) p.assignment[v] = v < 4 ? 0 : 1;
    ChainConfig cfg;
    cfg.steps = 300;
    cfg.seed = 4;
    cfg.balance_tolerance = 1;
    const auto stats = run_chain(g, p, cfg);
    CHECK(validate_partition(g, stats.final_partition, 1).valid);
    CHECK(stats.acceptance > 0.0);
}

TEST_CASE("determinism") {
    const auto g = make_grid(4, 4);
    ChainConfig cfg;
    cfg.steps = 300;
    cfg.seed = 2718;
    std::ostringstream a;
    std::ostringstream b;
    write_ensemble_csv(a, run_chain(g, fixtures::grid_halves(4, 4), cfg));
    write_ensemble_csv(b, run_chain(g, fixtures::grid_halves(4, 4), cfg));
    CHECK(a.str() == b.str());
    cfg.seed = 2719;
    std::ostringstream c;
    write_ensemble_csv(c, run_chain(g, fixtures::grid_halves(4, 4), cfg));
    CHECK(a.str() != c.str());
}

TEST_CASE("merge") {
    const auto g = make_grid(2, 2);
    ChainConfig cfg;
    cfg.steps = 10;
    auto first = run_chain(g, fixtures::grid_halves(2, 2), cfg);
    cfg.seed = 1;
    const auto second = run_chain(g, fixtures::grid_halves(2, 2), cfg);
    first.merge(second);
    CHECK(first.samples.size() == 22);
    long total = 0;
    for (const auto& [h, c] : first.partition_counts) total += c;
    CHECK(total == 22);
}

TEST_CASE("config from json") {
    const auto cfg = chain_config_from_json({{"steps", 12}, {"seed", 5}, {"tree_sampler", "alg1"}, {"max_resample", 3}});
    CHECK(cfg.steps == 12);
    CHECK(cfg.seed == 5);
    CHECK(cfg.sampler == TreeSampler::alg1);
    CHECK(cfg.max_resample == 3);
}
