#pragma once

// Brute-force references. They only read the edge list of a graph, so they
// share no code with the determinant, resistance or enumeration paths.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"
#include "sptree/partition.hpp"

namespace oracle {

using sptree::EdgeId;
using sptree::EmbeddedMultiGraph;
using sptree::VertexId;

/// Every spanning tree as a sorted edge-id list, found by checking every
/// (|V|-1)-subset of the edges.
std::vector<std::vector<EdgeId>> spanning_trees(const EmbeddedMultiGraph& g);

/// (trees containing e) / (all trees)
sptree::Rational tree_fraction(const EmbeddedMultiGraph& g, EdgeId e);

/// Vertex sets of an m-partition, each sorted, in canonical district order.
using VertexSets = std::vector<std::vector<VertexId>>;

/// All balanced connected m-partitions, by labelling every vertex with a
/// restricted growth string and keeping the valid ones.
std::set<VertexSets> balanced_partitions(const EmbeddedMultiGraph& g, int m);

VertexSets as_sets(const sptree::Partition& p);

/// Connectivity of the subgraph induced on `keep`, by flood fill.
bool induces_connected(const EmbeddedMultiGraph& g, const std::vector<VertexId>& keep);

/// Canonical key for a tree drawn by any sampler.
std::string tree_key(std::vector<EdgeId> tree);

}  // namespace oracle
