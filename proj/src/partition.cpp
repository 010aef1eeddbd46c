#include "sptree/partition.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <queue>
#include <set>

#include "sptree/spectral.hpp"

namespace sptree {

std::vector<std::vector<VertexId>> Partition::districts() const {
    std::vector<std::vector<VertexId>> out(static_cast<std::size_t>(std::max(m, 0)));
    for (const auto& [v, d] : assignment) {
        if (d < 0 || d >= m) throw PartitionError("vertex " + std::to_string(v) + " has district " + std::to_string(d) + " outside 0.." + std::to_string(m - 1));
        out[static_cast<std::size_t>(d)].push_back(v);
    }
    return out;
}

Partition canonical(const Partition& p) {
    std::map<int, int> relabel;
    Partition out;
    out.m = p.m;
    for (const auto& [v, d] : p.assignment) {  // ascending vertex order
        auto [it, fresh] = relabel.try_emplace(d, static_cast<int>(relabel.size()));
        out.assignment[v] = it->second;
    }
    return out;
}

std::string partition_hash(const Partition& p) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint32_t x) {
        for (int i = 0; i < 4; ++i) {
            h ^= (x >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [v, d] : canonical(p).assignment) {
        mix(static_cast<std::uint32_t>(v));
        mix(static_cast<std::uint32_t>(d));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

void require_cover(const EmbeddedMultiGraph& g, const Partition& p) {
    if (p.m < 1) throw PartitionError("district count m must be positive");
    if (p.assignment.size() != g.num_vertices()) {
        throw PartitionError("assignment covers " + std::to_string(p.assignment.size()) + " vertices, graph has " + std::to_string(g.num_vertices()));
    }
    for (const auto& [v, d] : p.assignment) {
        if (!g.has_vertex(v)) throw PartitionError("assignment names unknown vertex " + std::to_string(v));
        if (d < 0 || d >= p.m) throw PartitionError("vertex " + std::to_string(v) + " assigned to district " + std::to_string(d) + " outside 0.." + std::to_string(p.m - 1));
    }
}

PartitionCheck check(const EmbeddedMultiGraph& g, const Partition& p, int tolerance) {
    PartitionCheck out;
    const auto n = static_cast<long>(g.num_vertices());
    const auto target = static_cast<double>(n) / p.m;
    const auto districts = p.districts();
    for (std::size_t d = 0; d < districts.size(); ++d) {
        const auto size = static_cast<double>(districts[d].size());
        if (std::abs(size - target) > tolerance) {
            out.diagnostics.push_back("district " + std::to_string(d) + " has " + std::to_string(districts[d].size()) +
                                      " vertices, expected " + std::to_string(n / p.m) +
                                      (tolerance > 0 ? " +/- " + std::to_string(tolerance) : ""));
        }
        if (districts[d].empty()) continue;
        if (!g.induced(districts[d]).is_connected()) {
            out.diagnostics.push_back("district " + std::to_string(d) + " is not connected");
        }
    }
    out.valid = out.diagnostics.empty();
    return out;
}

}  // namespace

PartitionCheck validate_partition(const EmbeddedMultiGraph& g, const Partition& p) {
    require_cover(g, p);
    if (g.num_vertices() % static_cast<std::size_t>(p.m) != 0) {
        throw PartitionError("m = " + std::to_string(p.m) + " does not divide |V| = " + std::to_string(g.num_vertices()) +
                             "; exactly balanced districts are impossible");
    }
    return check(g, p, 0);
}

PartitionCheck validate_partition(const EmbeddedMultiGraph& g, const Partition& p, int tolerance) {
    if (tolerance <= 0) return validate_partition(g, p);
    require_cover(g, p);
    return check(g, p, tolerance);
}

CutSet cut_edges(const EmbeddedMultiGraph& g, const Partition& p) {
    CutSet cut;
    for (const Edge& e : g.edges()) {
        if (p.district_of(e.u) != p.district_of(e.v)) cut.edges.push_back(e.id);
    }
    return cut;
}

BigInt spanning_tree_score(const EmbeddedMultiGraph& g, const Partition& p) {
    BigInt score = 1;
    for (const auto& district : p.districts()) score *= spanning_tree_number(g.induced(district));
    return score;
}

EmbeddedMultiGraph quotient_graph(const EmbeddedMultiGraph& g, const Partition& p) {
    EmbeddedMultiGraph q = g;
    for (const Edge& e : g.edges()) {
        if (p.district_of(e.u) != p.district_of(e.v)) continue;
        if (!q.edge(e.id).is_loop()) q.contract_in_place(e.id);
    }
    for (const Edge& e : g.edges()) {
        // Contraction already consumed the edges it merged along.
        if (p.district_of(e.u) == p.district_of(e.v) && q.has_edge(e.id)) q.remove_in_place(e.id);
    }
    return q;
}

EnumerationOptions default_enumeration_options() {
    EnumerationOptions opts;
    if (const char* env = std::getenv("SPTREE_ENUM_CAP")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) opts.max_vertices = static_cast<std::size_t>(cap);
    }
    return opts;
}

namespace {

/// Connected-set growth (ESU style): every connected k-set containing the
/// smallest free vertex is produced exactly once.
class Enumerator {
public:
    Enumerator(const EmbeddedMultiGraph& g, int m, const std::function<void(const Partition&)>& visit)
        : ids_(g.vertices()), m_(m), visit_(visit) {
        const std::size_t n = ids_.size();
        k_ = n / static_cast<std::size_t>(m);
        std::vector<int> row(static_cast<std::size_t>(g.vertex_capacity()), -1);
        for (std::size_t i = 0; i < n; ++i) row[static_cast<std::size_t>(ids_[i])] = static_cast<int>(i);
        adj_.resize(n);
        for (const Edge& e : g.edges()) {
            if (e.is_loop()) continue;
            const int a = row[static_cast<std::size_t>(e.u)];
            const int b = row[static_cast<std::size_t>(e.v)];
            adj_[static_cast<std::size_t>(a)].push_back(b);
            adj_[static_cast<std::size_t>(b)].push_back(a);
        }
        for (auto& list : adj_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        district_.assign(n, -1);
        touch_.assign(n, 0);
    }

    void run() { place(0); }

private:
    void place(int d) {
        if (d == m_) {
            emit();
            return;
        }
        int root = -1;
        for (std::size_t i = 0; i < district_.size(); ++i) {
            if (district_[i] < 0) {
                root = static_cast<int>(i);
                break;
            }
        }
        current_ = d;
        std::vector<int> sub{root};
        add_to_sub(root);
        std::vector<int> ext;
        for (int u : adj_[static_cast<std::size_t>(root)]) {
            if (district_[static_cast<std::size_t>(u)] < 0) ext.push_back(u);
        }
        extend(sub, ext);
        remove_from_sub(root);
    }

    void add_to_sub(int w) {
        district_[static_cast<std::size_t>(w)] = current_;
        for (int u : adj_[static_cast<std::size_t>(w)]) ++touch_[static_cast<std::size_t>(u)];
    }

    void remove_from_sub(int w) {
        district_[static_cast<std::size_t>(w)] = -1;
        for (int u : adj_[static_cast<std::size_t>(w)]) --touch_[static_cast<std::size_t>(u)];
    }

    void extend(std::vector<int>& sub, std::vector<int> ext) {
        if (sub.size() == k_) {
            if (remainder_feasible()) {
                const int d = current_;
                // touch_ counts only vertices of the district being grown.
                std::vector<int> saved_touch(touch_.size(), 0);
                saved_touch.swap(touch_);
                place(d + 1);
                touch_.swap(saved_touch);
                current_ = d;
            }
            return;
        }
        while (!ext.empty()) {
            const int w = ext.back();
            ext.pop_back();
            std::vector<int> next = ext;
            for (int u : adj_[static_cast<std::size_t>(w)]) {
                const auto uu = static_cast<std::size_t>(u);
                if (district_[uu] < 0 && touch_[uu] == 0 && u != w) next.push_back(u);
            }
            sub.push_back(w);
            add_to_sub(w);
            extend(sub, std::move(next));
            remove_from_sub(w);
            sub.pop_back();
        }
    }

    /// Every component of the unassigned vertices must hold a multiple of k.
    bool remainder_feasible() const {
        std::vector<char> seen(district_.size(), 0);
        for (std::size_t s = 0; s < district_.size(); ++s) {
            if (district_[s] >= 0 || seen[s]) continue;
            std::size_t size = 0;
            std::vector<int> stack{static_cast<int>(s)};
            seen[s] = 1;
            while (!stack.empty()) {
                const int x = stack.back();
                stack.pop_back();
                ++size;
                for (int y : adj_[static_cast<std::size_t>(x)]) {
                    const auto yy = static_cast<std::size_t>(y);
                    if (district_[yy] < 0 && !seen[yy]) {
                        seen[yy] = 1;
                        stack.push_back(y);
                    }
                }
            }
            if (size % k_ != 0) return false;
        }
        return true;
    }

    void emit() {
        Partition p;
        p.m = m_;
        for (std::size_t i = 0; i < ids_.size(); ++i) p.assignment[ids_[i]] = district_[i];
        visit_(p);
    }

    std::vector<VertexId> ids_;
    int m_;
    const std::function<void(const Partition&)>& visit_;
    std::size_t k_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<int> district_;
    std::vector<int> touch_;
    int current_ = 0;
};

}  // namespace

void for_each_partition(const EmbeddedMultiGraph& g, int m, const std::function<void(const Partition&)>& visit,
                        const EnumerationOptions& opts) {
    if (m < 1) throw PartitionError("district count m must be positive");
    if (g.num_vertices() > opts.max_vertices) {
        throw PartitionError("graph has " + std::to_string(g.num_vertices()) + " vertices, above the enumeration cap of " +
                             std::to_string(opts.max_vertices) + "; use sampling (recom) instead or raise SPTREE_ENUM_CAP");
    }
    if (g.num_vertices() == 0 || g.num_vertices() % static_cast<std::size_t>(m) != 0) {
        throw PartitionError("m = " + std::to_string(m) + " does not divide |V| = " + std::to_string(g.num_vertices()));
    }
    Enumerator(g, m, visit).run();
}

std::vector<Partition> enumerate_partitions(const EmbeddedMultiGraph& g, int m, const EnumerationOptions& opts) {
    std::vector<Partition> out;
    for_each_partition(g, m, [&out](const Partition& p) { out.push_back(p); }, opts);
    return out;
}

DistributionTable spanning_tree_distribution(const EmbeddedMultiGraph& g, int m, const EnumerationOptions& opts) {
    DistributionTable table;
    table.total_score = 0;
    for_each_partition(g, m, [&](const Partition& p) {
        DistributionEntry entry;
        entry.partition = p;
        entry.hash = partition_hash(p);
        entry.cut_edges = cut_edges(g, p).size();
        entry.score = spanning_tree_score(g, p);
        table.total_score += entry.score;
        table.entries.push_back(std::move(entry));
    }, opts);
    table.graph_trees = spanning_tree_number(g);
    for (auto& entry : table.entries) {
        entry.probability = Rational(entry.score, table.total_score);
        entry.probability.canonicalize();
    }
    if (table.total_score > 0) {
        table.beta = Rational(table.graph_trees, table.total_score);
        table.beta.canonicalize();
    }
    return table;
}

}  // namespace sptree
