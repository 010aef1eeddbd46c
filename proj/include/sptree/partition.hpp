#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"

namespace sptree {

/// Assignment of every vertex to a district 0..m-1.
struct Partition {
    int m = 0;
    std::map<VertexId, int> assignment;

    [[nodiscard]] int district_of(VertexId v) const { return assignment.at(v); }
    [[nodiscard]] std::vector<std::vector<VertexId>> districts() const;
    friend bool operator==(const Partition&, const Partition&) = default;
};

class PartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Districts renumbered in order of their smallest vertex id.
Partition canonical(const Partition& p);
/// FNV-1a over the canonical (vertex, district) sequence, as 16 hex digits.
std::string partition_hash(const Partition& p);

struct PartitionCheck {
    bool valid = false;
    std::vector<std::string> diagnostics;
};

/// Exact balance (|V|/m per district) and connectivity. Throws PartitionError
/// when m does not divide |V| or the assignment does not cover the graph.
PartitionCheck validate_partition(const EmbeddedMultiGraph& g, const Partition& p);
/// District sizes within `tolerance` of |V|/m, districts connected. The
/// divisibility requirement is dropped when tolerance > 0.
PartitionCheck validate_partition(const EmbeddedMultiGraph& g, const Partition& p, int tolerance);

struct CutSet {
    std::vector<EdgeId> edges;  // ascending
    [[nodiscard]] std::size_t size() const { return edges.size(); }
};

CutSet cut_edges(const EmbeddedMultiGraph& g, const Partition& p);
/// Product of the districts' spanning tree counts.
BigInt spanning_tree_score(const EmbeddedMultiGraph& g, const Partition& p);
/// Every district contracted to its lowest vertex id; only cut edges remain.
EmbeddedMultiGraph quotient_graph(const EmbeddedMultiGraph& g, const Partition& p);

struct EnumerationOptions {
    std::size_t max_vertices = 20;
};

/// Default cap, overridable with SPTREE_ENUM_CAP.
EnumerationOptions default_enumeration_options();

/// Calls `visit` once per balanced connected m-partition, in canonical form.
void for_each_partition(const EmbeddedMultiGraph& g, int m, const std::function<void(const Partition&)>& visit,
                        const EnumerationOptions& opts = default_enumeration_options());
std::vector<Partition> enumerate_partitions(const EmbeddedMultiGraph& g, int m,
                                            const EnumerationOptions& opts = default_enumeration_options());

struct DistributionEntry {
    Partition partition;
    std::string hash;
    std::size_t cut_edges = 0;
    BigInt score;
    Rational probability;
};

/// Exact spanning tree distribution over balanced connected m-partitions.
struct DistributionTable {
    std::vector<DistributionEntry> entries;  // enumeration order
    BigInt total_score;
    BigInt graph_trees;
    /// Pr[P] = beta * sp(P) / sp(G)
    Rational beta;
};

DistributionTable spanning_tree_distribution(const EmbeddedMultiGraph& g, int m,
                                             const EnumerationOptions& opts = default_enumeration_options());

}  // namespace sptree
