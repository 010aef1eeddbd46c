#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"
#include "sptree/partition.hpp"
#include "sptree/sampler.hpp"

namespace sptree {

class BoundsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Claim { lemma32, theorem31, eq4, corollary };

std::string claim_name(Claim c);

struct BoundReport {
    Claim claim = Claim::eq4;
    long instances_checked = 0;
    long applicable = 0;
    std::vector<std::string> violations;
    /// Smallest slack seen, in natural-log units. +inf when nothing applied.
    double min_margin = std::numeric_limits<double>::infinity();
    std::map<std::string, std::string> parameters;
    std::vector<std::map<std::string, std::string>> rows;  // per-instance detail
    std::vector<std::string> notes;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// (log(1/(2 k2)) - log(alpha)) / log(1 - 1/k1) + epsilon
double lambda(int k1, int k2, double alpha, double epsilon);

/// Deletion constants c1 = 1/(2 k2), c2 = 1 - 1/k1.
Rational deletion_c1(int k2);
Rational deletion_c2(int k1);

/// Cut edges removed by the score construction: the quotient graph gets its
/// minimum-edge-id spanning tree, each tree pair keeps its lowest-id cut
/// edge, and every other cut edge is returned (ascending).
std::vector<EdgeId> score_deletion_set(const EmbeddedMultiGraph& g, const Partition& p);

/// c1^(|cut| - m + 1) <= sp(P)/sp(G) <= c2^(|cut| - m + 1), with sp(P)/sp(G)
/// obtained both from the deletion run and from tree counts.
BoundReport verify_eq4(const EmbeddedMultiGraph& g, const Partition& p, int k1, int k2);
/// Same check over every balanced connected m-partition.
BoundReport verify_eq4_all(const EmbeddedMultiGraph& g, int m, int k1, int k2,
                           const EnumerationOptions& opts = default_enumeration_options());

BoundReport verify_theorem31(const EmbeddedMultiGraph& g, int m, int k1, int k2, double alpha, double epsilon,
                             const EnumerationOptions& opts = default_enumeration_options());

BoundReport verify_corollary(const EmbeddedMultiGraph& g, int m, int k1, int k2,
                             const EnumerationOptions& opts = default_enumeration_options());

enum class RunKind { alg1, deletions_only };

/// Seeded runs (seed of run i = derive_seed(seed, i)) with prefix-product
/// bounds and the pebble potential checked on each.
BoundReport verify_lemma32_runs(const EmbeddedMultiGraph& g, int k1, int k2, int runs, std::uint64_t seed,
                                RunKind kind, const SamplerOptions& opts = {});

}  // namespace sptree
