#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/partition.hpp"

namespace sptree::fixtures {

/// Rotation at every vertex = counter-clockwise order of its neighbours
/// under the given straight-line drawing. Parallel edges are not supported.
void embed_by_angles(EmbeddedMultiGraph& g, const std::vector<std::pair<double, double>>& coords);

EmbeddedMultiGraph path_graph(int n);
/// k >= 3 is a simple cycle; k == 2 is a pair of parallel edges.
EmbeddedMultiGraph cycle_graph(int k);
/// Two vertices joined by k parallel edges.
EmbeddedMultiGraph bundle(int k);
/// K_n; the rotation is planar only for n <= 4.
EmbeddedMultiGraph complete_graph(int n);
/// Triangle 0-1-2 whose edge 0-1 is doubled and vertex 2 carries a loop.
EmbeddedMultiGraph loopy_triangle();

/// Grid with random diagonals and random non-bridge deletions, embedded by
/// its straight-line drawing.
EmbeddedMultiGraph random_planar(int w, int h, std::uint64_t seed, double diagonal_p = 0.5, double delete_p = 0.2);

/// w x h grid split into a left and a right half (w even).
Partition grid_halves(int w, int h);

/// Twelve-region map with two 3-partitions: one whose districts are all
/// trees (13 cut edges) and one with district scores 8, 3, 8 (8 cut edges).
struct RegionMap {
    EmbeddedMultiGraph graph;
    Partition tree_districts;
    Partition compact_districts;
};
RegionMap region_map();

/// Two triangles sharing an edge; {a, b} is an outer edge.
struct Diamond {
    EmbeddedMultiGraph graph;
    VertexId a = 0;
    VertexId b = 2;
    EdgeId ab = 1;
};
Diamond diamond();

}  // namespace sptree::fixtures
