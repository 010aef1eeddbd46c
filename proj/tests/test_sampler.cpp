#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <map>
#include <set>

#include "oracles.hpp"
#include "sptree/fixtures.hpp"
#include "sptree/rng.hpp"
#include "sptree/sampler.hpp"
#include "sptree/spectral.hpp"

using namespace sptree;

namespace {

double uniform_p_value(const std::map<std::string, long>& counts, std::size_t cells, long draws) {
    const double expected = static_cast<double>(draws) / static_cast<double>(cells);
    double stat = 0.0;
    for (const auto& [key, c] : counts) stat += (c - expected) * (c - expected) / expected;
    stat += static_cast<double>(cells - counts.size()) * expected;  // empty cells
    boost::math::chi_squared dist(static_cast<double>(cells - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST_CASE("every exact trace has probability one over the tree count") {
    std::vector<EmbeddedMultiGraph> graphs{make_grid(3, 3), fixtures::loopy_triangle(), fixtures::diamond().graph,
                                           fixtures::bundle(3), fixtures::complete_graph(4)};
    for (std::uint64_t s = 1; s <= 4; ++s) graphs.push_back(fixtures::random_planar(3, 3, s));
    for (const auto& g : graphs) {
        const auto trees = oracle::spanning_trees(g);
        std::set<std::string> keys;
        for (const auto& t : trees) keys.insert(oracle::tree_key(t));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto trace = sample_tree_alg1(g, seed);
            CHECK(trace.exact);
            CHECK(keys.count(oracle::tree_key(trace.tree)) == 1);
            CHECK(trace.path_probability() == Rational(1, static_cast<long>(trees.size())));
        }
    }
}

TEST_CASE("edge order does not change the path probability") {
    const auto g = make_grid(3, 3);
    auto ids = g.edge_ids();
    std::reverse(ids.begin(), ids.end());
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto a = sample_tree_alg1(g, seed, EdgePolicy::given(ids));
        const auto b = sample_tree_alg1(g, seed, EdgePolicy::boundary_first({4, 5, 6}));
        CHECK(a.path_probability() == make_rational(1, 192));
        CHECK(b.path_probability() == make_rational(1, 192));
        CHECK(a.steps.front().edge == ids.front());
    }
}

TEST_CASE("p_i is r_i or 1 - r_i") {
    const auto trace = sample_tree_alg1(make_grid(4, 3), 17);
    for (const auto& s : trace.steps) {
        REQUIRE(s.r_exact);
        CHECK(*s.p_exact == (s.action == Action::contracted ? *s.r_exact : 1 - *s.r_exact));
        CHECK(s.forced == (*s.r_exact == 0 || *s.r_exact == 1));
    }
    CHECK(trace.tree.size() == 11);
}

TEST_CASE("rng contract: one word per free decision") {
    const auto g = make_grid(3, 3);
    const std::uint64_t seed = 2024;
    const auto trace = sample_tree_alg1(g, seed);
    Rng rng(seed);
    for (const auto& s : trace.steps) {
        if (s.forced) continue;
        const bool contract = rng.bernoulli(*s.r_exact);
        CHECK(contract == (s.action == Action::contracted));
    }
    long free_steps = 0;
    for (const auto& s : trace.steps) free_steps += s.forced ? 0 : 1;
    CHECK(rng.words_drawn() == static_cast<std::uint64_t>(free_steps));
}

TEST_CASE("forced moves consume nothing") {
    const auto path = sample_tree_alg1(fixtures::path_graph(5), 1);
    for (const auto& s : path.steps) {
        CHECK(s.forced);
        CHECK(s.action == Action::contracted);
    }
    const auto loopy = sample_tree_alg1(fixtures::loopy_triangle(), 3, EdgePolicy::given({4, 0, 1, 2, 3}));
    CHECK(loopy.steps.front().forced);
    CHECK(loopy.steps.front().action == Action::deleted);
    CHECK(*loopy.steps.front().p_exact == 1);
}

TEST_CASE("bernoulli threshold") {
    Rng a(5);
    Rng b(5);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t w = b.next_word();
        // 1/3 * 2^64 floored
        CHECK(a.bernoulli(make_rational(1, 3)) == (w < 6148914691236517205ULL));
    }
    Rng c(1);
    CHECK_FALSE(c.bernoulli(Rational(0)));
    CHECK(c.bernoulli(Rational(1)));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    Rng d(9);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 600; ++i) seen.insert(d.uniform_below(6));
    CHECK(seen.size() == 6);
}

TEST_CASE("determinism") {
    const auto g = fixtures::random_planar(4, 4, 2);
    const auto a = sample_tree_alg1(g, 99);
    const auto b = sample_tree_alg1(g, 99);
    CHECK(a.tree == b.tree);
    CHECK(a.steps.size() == b.steps.size());
    CHECK(sample_tree_wilson(g, 4) == sample_tree_wilson(g, 4));
}

TEST_CASE("uniformity on the 4-cycle") {
    const auto g = fixtures::cycle_graph(4);
    std::map<std::string, long> alg1;
    std::map<std::string, long> wilson;
    const long draws = 20000;
    for (long i = 0; i < draws; ++i) {
        ++alg1[oracle::tree_key(sample_tree_alg1(g, derive_seed(1, static_cast<std::uint64_t>(i))).tree)];
        ++wilson[oracle::tree_key(sample_tree_wilson(g, derive_seed(2, static_cast<std::uint64_t>(i))))];
    }
    CHECK(alg1.size() == 4);
    CHECK(uniform_p_value(alg1, 4, draws) > 0.001);
    CHECK(uniform_p_value(wilson, 4, draws) > 0.001);
}

TEST_CASE("uniformity on the 3x3 grid") {
    const auto g = make_grid(3, 3);
    std::map<std::string, long> alg1;
    std::map<std::string, long> wilson;
    const long draws = 20000;
    for (long i = 0; i < draws; ++i) {
        ++alg1[oracle::tree_key(sample_tree_alg1(g, derive_seed(3, static_cast<std::uint64_t>(i))).tree)];
        ++wilson[oracle::tree_key(sample_tree_wilson(g, derive_seed(4, static_cast<std::uint64_t>(i))))];
    }
    CHECK(uniform_p_value(alg1, 192, draws) > 0.001);
    CHECK(uniform_p_value(wilson, 192, draws) > 0.001);
}

TEST_CASE("float mode") {
    SamplerOptions opts;
    opts.mode = SamplerMode::floating;
    const auto g = make_grid(5, 5);
    const auto trees_ok = [&g](const std::vector<EdgeId>& t) {
        EmbeddedMultiGraph h;
        for (VertexId v : g.vertices()) h.add_vertex(v);
        for (EdgeId e : t) h.add_edge(e, g.edge(e).u, g.edge(e).v);
        return t.size() == g.num_vertices() - 1 && h.is_connected();
    };
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto trace = sample_tree_alg1(g, seed, EdgePolicy::lowest_id(), opts);
        CHECK_FALSE(trace.exact);
        CHECK(trees_ok(trace.tree));
        for (const auto& s : trace.steps) {
            CHECK_FALSE(s.r_exact);
            CHECK(s.r >= 0.0);
            CHECK(s.r <= 1.0);
        }
        CHECK(trace.log_path_probability() == doctest::Approx(-std::log(557568000.0)).epsilon(1e-9));
    }
    CHECK(trees_ok(sample_tree_wilson(g, 1)));
}

TEST_CASE("size cap applies only in automatic mode") {
    SamplerOptions opts;
    opts.mode = SamplerMode::exact;
    opts.exact_max_vertices = 8;
    CHECK(sample_tree_alg1(make_grid(3, 3), 1, EdgePolicy::lowest_id(), opts).exact);
    opts.mode = SamplerMode::automatic;
    CHECK_FALSE(sample_tree_alg1(make_grid(3, 3), 1, EdgePolicy::lowest_id(), opts).exact);
}

TEST_CASE("constrained deletions") {
    const auto g = make_grid(3, 3);
    const std::vector<EdgeId> doomed{0, 5, 9};
    const auto run = run_constrained_deletions(g, doomed);
    EmbeddedMultiGraph rest = g;
    for (EdgeId e : doomed) rest.remove_in_place(e);
    Rational expect(spanning_tree_number(rest), spanning_tree_number(g));
    expect.canonicalize();
    CHECK(run.probability == expect);
    CHECK(run.remaining == rest);
    CHECK_THROWS_AS(run_constrained_deletions(fixtures::path_graph(3), {0}), SamplerError);
}

TEST_CASE("deletions-only runs") {
    const auto g = make_grid(4, 4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto trace = sample_deletions_only(g, seed);
        CHECK(trace.steps.size() == g.num_edges() - g.num_vertices() + 1);
        for (const auto& s : trace.steps) CHECK(s.action == Action::deleted);
        CHECK(trace.tree.size() == g.num_vertices() - 1);
    }
}

TEST_CASE("replay") {
    const auto g = make_grid(3, 3);
    const auto trace = sample_tree_alg1(g, 8);
    const auto half = replay(g, trace.steps, trace.steps.size() / 2);
    CHECK(half.num_edges() == g.num_edges() - trace.steps.size() / 2);
    const auto end = replay(g, trace.steps, trace.steps.size());
    CHECK(end.num_vertices() == 1);
    for (const Edge& e : end.edges()) CHECK(e.is_loop());
    // Loops still present when one vertex is left are never visited.
    const auto loopy = sample_tree_alg1(fixtures::loopy_triangle(), 1);
    const auto rest = replay(fixtures::loopy_triangle(), loopy.steps, loopy.steps.size());
    CHECK(rest.num_vertices() == 1);
    for (const Edge& e : rest.edges()) CHECK(e.is_loop());
    CHECK(is_bridge(fixtures::path_graph(3), 1));
    CHECK_FALSE(is_bridge(g, 0));
}
