#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"

namespace sptree {

/// Number of spanning trees. For graphs above the exact-count threshold only
/// the natural log is known and `exact` is false.
struct TreeCount {
    BigInt value = 0;
    bool exact = true;
    double log_value = 0.0;
};

struct SpectralOptions {
    std::size_t exact_count_max_vertices = 2048;
    std::size_t exact_resistance_max_vertices = 64;
};

TreeCount count_spanning_trees(const EmbeddedMultiGraph& g, const SpectralOptions& opts = {});
/// Exact count regardless of size. Zero for disconnected graphs.
BigInt spanning_tree_number(const EmbeddedMultiGraph& g);

enum class ResistanceMethod { automatic, tree_ratio, laplacian_solve };

struct ResistanceResult {
    EdgeId edge = -1;
    ResistanceMethod method = ResistanceMethod::tree_ratio;
    std::optional<Rational> exact;
    double approx = 0.0;
};

/// Unit current enters at source and leaves at sink; the sink is grounded.
/// Currents are reported per edge id, oriented from Edge::u to Edge::v.
struct FlowSolution {
    VertexId source = -1;
    VertexId sink = -1;
    bool exact = false;
    std::map<VertexId, Rational> voltage;
    std::map<EdgeId, Rational> current;
    std::map<VertexId, double> voltage_approx;
    std::map<EdgeId, double> current_approx;
    double residual = 0.0;
};

FlowSolution solve_flow(const EmbeddedMultiGraph& g, VertexId source, VertexId sink,
                        const SpectralOptions& opts = {});

ResistanceResult effective_resistance(const EmbeddedMultiGraph& g, EdgeId e,
                                      ResistanceMethod method = ResistanceMethod::automatic,
                                      const SpectralOptions& opts = {});

/// R_e <= 1 - 1/k for a simple cycle of length k through e, given as the
/// closed sequence of edge ids starting with e.
bool check_cycle_bound(const EmbeddedMultiGraph& g, EdgeId e, const std::vector<EdgeId>& cycle);
/// R_e >= 1 / min(deg(a), deg(b)).
bool check_degree_bound(const EmbeddedMultiGraph& g, EdgeId e);

}  // namespace sptree
