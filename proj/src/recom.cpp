#include "sptree/recom.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sptree/sampler.hpp"

namespace sptree {

namespace {

std::vector<EdgeId> draw_tree(const EmbeddedMultiGraph& region, Rng& rng, TreeSampler sampler) {
    const std::uint64_t seed = rng.next_word();
    if (sampler == TreeSampler::wilson) return sample_tree_wilson(region, seed);
    return sample_tree_alg1(region, seed).tree;
}

/// Tree edges whose removal leaves two sides within tolerance of target.
/// Returns (edge, vertices on the side away from the root).
std::vector<std::pair<EdgeId, std::vector<VertexId>>> balanced_cuts(const EmbeddedMultiGraph& region,
                                                                    const std::vector<EdgeId>& tree, double target,
                                                                    int tolerance) {
    const auto cap = static_cast<std::size_t>(region.vertex_capacity());
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(cap);
    for (EdgeId e : tree) {
        const Edge& ed = region.edge(e);
        adj[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
        adj[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
    }
    const auto vertices = region.vertices();
    const VertexId root = vertices.front();
    std::vector<VertexId> order;
    std::vector<VertexId> parent(cap, -1);
    std::vector<EdgeId> parent_edge(cap, -1);
    std::vector<char> seen(cap, 0);
    order.push_back(root);
    seen[static_cast<std::size_t>(root)] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& [y, e] : adj[static_cast<std::size_t>(order[i])]) {
            if (seen[static_cast<std::size_t>(y)]) continue;
            seen[static_cast<std::size_t>(y)] = 1;
            parent[static_cast<std::size_t>(y)] = order[i];
            parent_edge[static_cast<std::size_t>(y)] = e;
            order.push_back(y);
        }
    }
    std::vector<long> size(cap, 1);
    for (std::size_t i = order.size(); i-- > 1;) {
        size[static_cast<std::size_t>(parent[static_cast<std::size_t>(order[i])])] += size[static_cast<std::size_t>(order[i])];
    }
    const auto total = static_cast<long>(vertices.size());
    std::vector<std::pair<EdgeId, std::vector<VertexId>>> out;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const VertexId v = order[i];
        const long below = size[static_cast<std::size_t>(v)];
        if (std::abs(static_cast<double>(below) - target) > tolerance + 1e-9) continue;
        if (std::abs(static_cast<double>(total - below) - target) > tolerance + 1e-9) continue;
        out.push_back({parent_edge[static_cast<std::size_t>(v)], {}});
    }
    std::sort(out.begin(), out.end());
    // Vertices below each candidate edge.
    for (auto& [e, side] : out) {
        const Edge& ed = region.edge(e);
        const VertexId child = parent[static_cast<std::size_t>(ed.u)] == ed.v ? ed.u : ed.v;
        std::vector<VertexId> stack{child};
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            side.push_back(x);
            for (const auto& [y, te] : adj[static_cast<std::size_t>(x)]) {
                if (y != parent[static_cast<std::size_t>(x)]) stack.push_back(y);
            }
        }
    }
    return out;
}

}  // namespace

StepResult recom_step(const EmbeddedMultiGraph& g, const Partition& p, Rng& rng, const ChainConfig& cfg) {
    if (p.m < 2) throw ChainError("ReCom needs at least two districts");
    if (cfg.balance_tolerance < 0) throw ChainError("balance tolerance must be non-negative");
    const auto check = validate_partition(g, p, cfg.balance_tolerance);
    if (!check.valid) throw ChainError("invalid partition: " + check.diagnostics.front());

    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : g.edges()) {
        const int a = p.district_of(e.u);
        const int b = p.district_of(e.v);
        if (a != b) pairs.insert({std::min(a, b), std::max(a, b)});
    }
    if (pairs.empty()) throw ChainError("no adjacent district pair");
    const std::vector<std::pair<int, int>> listed(pairs.begin(), pairs.end());
    const auto [a, b] = listed[rng.uniform_below(listed.size())];

    StepResult out;
    out.district_a = a;
    out.district_b = b;
    out.partition = p;
    std::vector<VertexId> merged;
    for (const auto& [v, d] : p.assignment) {
        if (d == a || d == b) merged.push_back(v);
    }
    const EmbeddedMultiGraph region = g.induced(merged);
    const double target = static_cast<double>(g.num_vertices()) / p.m;

    for (int draw = 0; draw <= cfg.max_resample; ++draw) {
        const auto tree = draw_tree(region, rng, cfg.sampler);
        const auto cuts = balanced_cuts(region, tree, target, cfg.balance_tolerance);
        if (cuts.empty()) continue;
        out.redraws = draw;
        out.candidate_cuts = cuts.size();
        const auto& side = cuts[rng.uniform_below(cuts.size())].second;
        // The side holding the region's lowest vertex keeps district a.
        for (VertexId v : merged) out.partition.assignment[v] = a;
        for (VertexId v : side) out.partition.assignment[v] = b;
        out.partition = canonical(out.partition);
        return out;
    }
    out.skipped = true;
    out.redraws = cfg.max_resample;
    return out;
}

void EnsembleStats::merge(const EnsembleStats& other) {
    const auto before = static_cast<double>(samples.size());
    const auto added = static_cast<double>(other.samples.size());
    samples.insert(samples.end(), other.samples.begin(), other.samples.end());
    if (before + added > 0) acceptance = (acceptance * before + other.acceptance * added) / (before + added);
    skipped += other.skipped;
    for (const auto& [k, c] : other.histogram) histogram[k] += c;
    for (const auto& [h, c] : other.partition_counts) partition_counts[h] += c;
    final_partition = other.final_partition;
}

EnsembleStats run_chain(const EmbeddedMultiGraph& g, const Partition& p0, const ChainConfig& cfg) {
    if (cfg.steps < 0) throw ChainError("steps must be non-negative");
    const auto check = validate_partition(g, p0, cfg.balance_tolerance);
    if (!check.valid) throw ChainError("invalid start partition: " + check.diagnostics.front());

    EnsembleStats stats;
    Rng rng(cfg.seed);
    Partition current = canonical(p0);
    auto record = [&](long step) {
        ChainSample s{step, cut_edges(g, current).size(), partition_hash(current)};
        ++stats.histogram[s.cut_edges];
        ++stats.partition_counts[s.hash];
        stats.samples.push_back(std::move(s));
    };
    record(0);
    long accepted = 0;
    for (long step = 1; step <= cfg.steps; ++step) {
        StepResult r = recom_step(g, current, rng, cfg);
        if (r.skipped) {
            ++stats.skipped;
        } else {
            ++accepted;
            current = std::move(r.partition);
        }
        record(step);
    }
    stats.acceptance = cfg.steps > 0 ? static_cast<double>(accepted) / static_cast<double>(cfg.steps) : 1.0;
    stats.final_partition = current;
    return stats;
}

double tv_distance(const EnsembleStats& stats, const DistributionTable& exact) {
    long total = 0;
    for (const auto& [h, c] : stats.partition_counts) total += c;
    if (total == 0) return 1.0;
    double tv = 0.0;
    std::set<std::string> seen;
    for (const auto& entry : exact.entries) {
        seen.insert(entry.hash);
        const auto it = stats.partition_counts.find(entry.hash);
        const double emp = it == stats.partition_counts.end() ? 0.0 : static_cast<double>(it->second) / total;
        tv += std::abs(emp - entry.probability.get_d());
    }
    for (const auto& [h, c] : stats.partition_counts) {
        if (!seen.count(h)) tv += static_cast<double>(c) / total;
    }
    return tv / 2.0;
}

}  // namespace sptree
