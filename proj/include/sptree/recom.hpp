#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/partition.hpp"
#include "sptree/rng.hpp"

namespace sptree {

enum class TreeSampler { alg1, wilson };

struct ChainConfig {
    long steps = 0;
    std::uint64_t seed = 0;
    int balance_tolerance = 0;  // max deviation from |V|/m in vertices
    int max_resample = 64;
    TreeSampler sampler = TreeSampler::wilson;
};

class ChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StepResult {
    Partition partition;
    bool skipped = false;
    int redraws = 0;  // trees drawn beyond the first
    int district_a = -1;
    int district_b = -1;
    std::size_t candidate_cuts = 0;  // balanced cut edges on the accepted tree
};

/// One ReCom move: merge a uniformly chosen adjacent district pair, draw a
/// uniform spanning tree of the union and cut it at a balanced edge.
StepResult recom_step(const EmbeddedMultiGraph& g, const Partition& p, Rng& rng, const ChainConfig& cfg);

struct ChainSample {
    long step = 0;
    std::size_t cut_edges = 0;
    std::string hash;
};

struct EnsembleStats {
    std::vector<ChainSample> samples;  // step 0 is the start partition
    double acceptance = 1.0;
    long skipped = 0;
    std::map<std::size_t, long> histogram;       // cut-edge count -> samples
    std::map<std::string, long> partition_counts;  // hash -> samples
    Partition final_partition;

    /// Combines chains run with different seeds.
    void merge(const EnsembleStats& other);
};

EnsembleStats run_chain(const EmbeddedMultiGraph& g, const Partition& p0, const ChainConfig& cfg);

/// Total variation distance between the empirical partition frequencies and
/// an exact distribution keyed by the same hashes.
double tv_distance(const EnsembleStats& stats, const DistributionTable& exact);

}  // namespace sptree
