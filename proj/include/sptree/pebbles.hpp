#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"
#include "sptree/sampler.hpp"

namespace sptree {

/// Pebble piles on the vertices and faces of a shrinking embedded graph.
/// Deleting an edge merges the piles of the faces on its two sides;
/// contracting an edge merges the piles of its endpoints.
class PebbleTracker {
public:
    PebbleTracker(const EmbeddedMultiGraph& g, VertexId v0, FaceId f0);

    struct Merge {
        long x = 0;  // smaller pile
        long y = 0;  // larger pile (0 when both sides were already one pile)
        bool same_pile = false;
    };

    /// Applies one decision. Returns the piles that were merged.
    Merge apply(EdgeId e, Action action);

    [[nodiscard]] double log_potential() const { return log_potential_; }
    /// Live faces (by representative) with their current degrees and piles.
    [[nodiscard]] std::map<FaceId, int> face_degrees() const;
    [[nodiscard]] std::map<VertexId, int> vertex_degrees() const;
    [[nodiscard]] long face_pile(FaceId f);
    [[nodiscard]] long vertex_pile(VertexId v);
    /// Current piles, largest first. Their product is the potential.
    [[nodiscard]] std::vector<long> piles() const;

    /// deg(f) <= k2 * pile(f) for every live face, deg(v) <= k1 * pile(v)
    /// for every live vertex. Returns the offending descriptions.
    [[nodiscard]] std::vector<std::string> degree_relation_violations(int k1, int k2) const;

private:
    struct Sets {
        std::vector<int> parent;
        std::vector<long> pile;
        std::vector<int> degree;
        std::vector<char> live;
        int find(int x) const;
        int find(int x);
    };

    Sets faces_;
    Sets vertices_;
    std::map<EdgeId, std::pair<FaceId, FaceId>> sides_;
    std::map<EdgeId, Edge> ends_;
    std::vector<char> gone_;
    double log_potential_ = 0.0;
};

struct PebbleStep {
    int iteration = 0;
    Action action = Action::deleted;
    long x = 0;
    long y = 0;
    double log_potential = 0.0;
    /// p_i * P_{i-1} / P_i and the bound 1/(2k) it is checked against.
    double ratio = 0.0;
    Rational bound;
    bool holds = true;
};

struct PebbleReport {
    VertexId v0 = -1;
    FaceId f0 = -1;
    long p0 = 0;
    std::vector<PebbleStep> steps;
    double log_p0 = 0.0;
    double log_pt = 0.0;
    bool final_holds = true;  // P_t >= P_0
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

PebbleReport track_pebbles(const SampleTrace& trace, const EmbeddedMultiGraph& g, VertexId v0, FaceId f0, int k1,
                           int k2);

struct PrefixCheck {
    int t = 0;
    double log_product = 0.0;
    double log_lower = 0.0;  // t * log c1
    double log_upper = 0.0;  // t * log c2
    bool lower_holds = true;
    bool upper_holds = true;
};

/// Prefix-product bounds c1^t <= p_1...p_t <= c2^t.
struct Lemma32Report {
    int statement = 2;  // 2: deletions only, 1: mixed
    int k1 = 0;
    int k2 = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::optional<Rational> c1_exact;
    std::optional<Rational> c2_exact;  // irrational for the mixed statement
    std::vector<PrefixCheck> prefixes;  // t = 1..steps
    std::vector<std::string> violations;
    /// Iterations whose own p_i falls outside [c1, c2]: allowed, reported.
    std::vector<int> outside_band;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

Lemma32Report verify_lemma32(const SampleTrace& trace, int k1, int k2);

}  // namespace sptree
