#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptree/graph.hpp"
#include "sptree/numeric.hpp"

namespace sptree {

enum class Action { contracted, deleted };

std::string action_name(Action a);

struct TraceStep {
    int iteration = 0;  // 1-based
    EdgeId edge = -1;
    std::optional<Rational> r_exact;  // empty in float mode
    std::optional<Rational> p_exact;
    double r = 0.0;
    double p = 0.0;
    Action action = Action::deleted;
    bool forced = false;     // r in {0, 1}: no randomness consumed
    bool ambiguous = false;  // float mode: r within 1e-12 of 0 or 1 but not provably so
};

struct SampleTrace {
    std::vector<TraceStep> steps;
    std::vector<EdgeId> tree;  // original edge ids, ascending
    bool exact = true;
    std::uint64_t seed = 0;
    /// Natural log of the pebble potential after each iteration, index 0 = P_0.
    /// Filled in by the pebble tracker when requested.
    std::optional<std::vector<double>> log_pebbles;

    /// Product of all p_i. Only available for exact traces.
    [[nodiscard]] Rational path_probability() const;
    [[nodiscard]] double log_path_probability() const;
};

struct EdgePolicy {
    enum class Kind { lowest_id, given_order, boundary_first };
    Kind kind = Kind::lowest_id;
    /// given_order: the order itself. boundary_first: the preferred edges.
    std::vector<EdgeId> order;

    static EdgePolicy lowest_id() { return {}; }
    static EdgePolicy given(std::vector<EdgeId> order) { return {Kind::given_order, std::move(order)}; }
    static EdgePolicy boundary_first(std::vector<EdgeId> cut) { return {Kind::boundary_first, std::move(cut)}; }
};

enum class SamplerMode { automatic, exact, floating };

struct SamplerOptions {
    SamplerMode mode = SamplerMode::automatic;
    std::size_t exact_max_vertices = 64;
    double forced_threshold = 1e-12;
};

class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Contract-or-delete sampler driven by effective resistances. The edge with
/// resistance r is contracted with probability r, decided by one 64-bit word.
SampleTrace sample_tree_alg1(const EmbeddedMultiGraph& g, std::uint64_t seed,
                             const EdgePolicy& policy = EdgePolicy::lowest_id(), const SamplerOptions& opts = {});

/// Loop-erased random walk (Wilson), rooted at the lowest vertex id.
std::vector<EdgeId> sample_tree_wilson(const EmbeddedMultiGraph& g, std::uint64_t seed);

struct ConstrainedRun {
    Rational probability = 1;
    std::vector<TraceStep> steps;
    EmbeddedMultiGraph remaining;
};

/// Deletes the given edges in order, each with probability 1 - r_i, and
/// returns the exact path probability. Throws if a deletion disconnects.
ConstrainedRun run_constrained_deletions(const EmbeddedMultiGraph& g, const std::vector<EdgeId>& delete_set);

/// Deletes non-bridge edges in a seeded random order until a spanning tree
/// remains. The trace holds only the deletion iterations.
SampleTrace sample_deletions_only(const EmbeddedMultiGraph& g, std::uint64_t seed);

/// Replays the decisions of a trace on g. Useful for checking face data.
EmbeddedMultiGraph replay(const EmbeddedMultiGraph& g, const std::vector<TraceStep>& steps, std::size_t count);

bool is_bridge(const EmbeddedMultiGraph& g, EdgeId e);

}  // namespace sptree
