#include "sptree/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sptree/linalg.hpp"
#include "sptree/rng.hpp"
#include "sptree/spectral.hpp"

namespace sptree {

std::string action_name(Action a) { return a == Action::contracted ? "contracted" : "deleted"; }

Rational SampleTrace::path_probability() const {
    Rational prod = 1;
    for (const TraceStep& s : steps) {
        if (!s.p_exact) throw SamplerError("path probability needs an exact trace");
        prod *= *s.p_exact;
    }
    return prod;
}

double SampleTrace::log_path_probability() const {
    double sum = 0.0;
    for (const TraceStep& s : steps) sum += s.p_exact ? log_of(*s.p_exact) : std::log(s.p);
    return sum;
}

bool is_bridge(const EmbeddedMultiGraph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_capacity()), 0);
    std::vector<VertexId> stack{ed.u};
    seen[static_cast<std::size_t>(ed.u)] = 1;
    while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        if (x == ed.v) return false;
        for (const Dart& d : g.rotation(x)) {
            if (d.edge == e) continue;
            const VertexId y = g.edge(d.edge).other(x);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return true;
}

namespace {

double float_resistance(const EmbeddedMultiGraph& h, const Edge& e) {
    const linalg::VertexIndex index(h);
    const auto lap = linalg::laplacian(h, index);
    const auto sink = static_cast<std::size_t>(index.row(e.v));
    auto source = static_cast<std::size_t>(index.row(e.u));
    if (source > sink) --source;
    std::vector<double> rhs(lap.n - 1, 0.0);
    rhs[source] = 1.0;
    const auto sol = linalg::solve_spd(linalg::to_double(linalg::without(lap, sink)), rhs);
    return sol.x[source];
}

/// The shrinking graph of a run, with its spanning tree count kept current
/// in exact mode so each iteration costs one determinant.
class WorkingGraph {
public:
    WorkingGraph(const EmbeddedMultiGraph& g, bool exact, double threshold)
        : h_(g), exact_(exact), threshold_(threshold) {
        if (exact_) trees_ = spanning_tree_number(h_);
    }

    /// Fills r and the forced/ambiguous flags for edge e of the current graph.
    void measure(TraceStep& step) {
        const Edge e = h_.edge(step.edge);
        if (e.is_loop()) {
            step.forced = true;
            step.r = 0.0;
            if (exact_) step.r_exact = Rational(0);
            return;
        }
        if (exact_) {
            contracted_trees_ = spanning_tree_number(h_.contract(e.id));
            Rational r(contracted_trees_, trees_);
            r.canonicalize();
            step.forced = r == 1;
            step.r = r.get_d();
            step.r_exact = std::move(r);
            return;
        }
        if (is_bridge(h_, e.id)) {
            step.forced = true;
            step.r = 1.0;
            return;
        }
        const double r = std::clamp(float_resistance(h_, e), 0.0, 1.0);
        step.r = r;
        if (r <= threshold_ || r >= 1.0 - threshold_) {
            step.forced = true;
            step.ambiguous = true;
            step.r = r <= threshold_ ? 0.0 : 1.0;
        }
    }

    void apply(TraceStep& step) {
        if (step.action == Action::contracted) {
            if (exact_) {
                step.p_exact = *step.r_exact;
                trees_ = contracted_trees_;
            }
            step.p = step.r;
            h_.contract_in_place(step.edge);
        } else {
            if (exact_) {
                step.p_exact = 1 - *step.r_exact;
                if (!h_.edge(step.edge).is_loop()) trees_ -= contracted_trees_;
            }
            step.p = 1.0 - step.r;
            h_.remove_in_place(step.edge);
        }
    }

    [[nodiscard]] const EmbeddedMultiGraph& graph() const { return h_; }
    [[nodiscard]] bool exact() const { return exact_; }

private:
    EmbeddedMultiGraph h_;
    bool exact_;
    double threshold_;
    BigInt trees_;
    BigInt contracted_trees_;
};

class EdgePicker {
public:
    EdgePicker(const EmbeddedMultiGraph& g, const EdgePolicy& policy) : policy_(policy) {
        const auto ids = g.edge_ids();
        alive_.insert(ids.begin(), ids.end());
        if (policy.kind == EdgePolicy::Kind::boundary_first) {
            for (EdgeId e : policy.order) {
                if (alive_.count(e)) preferred_.insert(e);
            }
        }
    }

    EdgeId next() {
        if (policy_.kind == EdgePolicy::Kind::given_order) {
            while (cursor_ < policy_.order.size() && !alive_.count(policy_.order[cursor_])) ++cursor_;
            if (cursor_ == policy_.order.size()) {
                throw SamplerError("given edge order is exhausted while the graph still has two or more vertices");
            }
            return policy_.order[cursor_];
        }
        if (!preferred_.empty()) return *preferred_.begin();
        if (alive_.empty()) throw SamplerError("no edges left in a graph with two or more vertices");
        return *alive_.begin();
    }

    void drop(EdgeId e) {
        alive_.erase(e);
        preferred_.erase(e);
    }

private:
    const EdgePolicy& policy_;
    std::set<EdgeId> alive_;
    std::set<EdgeId> preferred_;
    std::size_t cursor_ = 0;
};

bool choose_exact(const EmbeddedMultiGraph& g, const SamplerOptions& opts) {
    switch (opts.mode) {
        case SamplerMode::exact: return true;
        case SamplerMode::floating: return false;
        case SamplerMode::automatic: break;
    }
    return g.num_vertices() <= opts.exact_max_vertices;
}

}  // namespace

SampleTrace sample_tree_alg1(const EmbeddedMultiGraph& g, std::uint64_t seed, const EdgePolicy& policy,
                             const SamplerOptions& opts) {
    if (g.num_vertices() == 0) throw SamplerError("empty graph");
    if (!g.is_connected()) throw SamplerError("input graph is disconnected; it has no spanning tree");

    SampleTrace trace;
    trace.seed = seed;
    trace.exact = choose_exact(g, opts);
    WorkingGraph work(g, trace.exact, opts.forced_threshold);
    EdgePicker picker(g, policy);
    Rng rng(seed);

    int iteration = 0;
    while (work.graph().num_vertices() >= 2) {
        TraceStep step;
        step.iteration = ++iteration;
        step.edge = picker.next();
        work.measure(step);
        if (step.forced) {
            step.action = step.r >= 1.0 ? Action::contracted : Action::deleted;
        } else {
            const bool contract = trace.exact ? rng.bernoulli(*step.r_exact) : rng.bernoulli(step.r);
            step.action = contract ? Action::contracted : Action::deleted;
        }
        work.apply(step);
        picker.drop(step.edge);
        if (step.action == Action::contracted) trace.tree.push_back(step.edge);
        trace.steps.push_back(std::move(step));
    }
    std::sort(trace.tree.begin(), trace.tree.end());
    return trace;
}

std::vector<EdgeId> sample_tree_wilson(const EmbeddedMultiGraph& g, std::uint64_t seed) {
    if (g.num_vertices() == 0) throw SamplerError("empty graph");
    if (!g.is_connected()) throw SamplerError("input graph is disconnected; it has no spanning tree");

    const auto cap = static_cast<std::size_t>(g.vertex_capacity());
    std::vector<std::vector<EdgeId>> incident(cap);
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        incident[static_cast<std::size_t>(e.u)].push_back(e.id);
        incident[static_cast<std::size_t>(e.v)].push_back(e.id);
    }
    const auto vertices = g.vertices();
    std::vector<char> in_tree(cap, 0);
    std::vector<EdgeId> next(cap, -1);
    in_tree[static_cast<std::size_t>(vertices.front())] = 1;
    Rng rng(seed);
    std::vector<EdgeId> tree;
    for (VertexId start : vertices) {
        // Walk until the tree is hit; overwriting next[] erases loops.
        for (VertexId x = start; !in_tree[static_cast<std::size_t>(x)];) {
            const auto& options = incident[static_cast<std::size_t>(x)];
            const EdgeId e = options[rng.uniform_below(options.size())];
            next[static_cast<std::size_t>(x)] = e;
            x = g.edge(e).other(x);
        }
        for (VertexId x = start; !in_tree[static_cast<std::size_t>(x)];) {
            in_tree[static_cast<std::size_t>(x)] = 1;
            const EdgeId e = next[static_cast<std::size_t>(x)];
            tree.push_back(e);
            x = g.edge(e).other(x);
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

ConstrainedRun run_constrained_deletions(const EmbeddedMultiGraph& g, const std::vector<EdgeId>& delete_set) {
    if (!g.is_connected()) throw SamplerError("input graph is disconnected");
    WorkingGraph work(g, true, 0.0);
    ConstrainedRun out;
    int iteration = 0;
    for (EdgeId e : delete_set) {
        if (!work.graph().has_edge(e)) throw SamplerError("edge " + std::to_string(e) + " is not in the graph (or listed twice)");
        TraceStep step;
        step.iteration = ++iteration;
        step.edge = e;
        work.measure(step);
        if (step.forced && step.r >= 1.0) {
            throw SamplerError("deleting edge " + std::to_string(e) + " would disconnect the graph");
        }
        step.action = Action::deleted;
        work.apply(step);
        out.probability *= *step.p_exact;
        out.steps.push_back(std::move(step));
    }
    out.remaining = work.graph();
    return out;
}

SampleTrace sample_deletions_only(const EmbeddedMultiGraph& g, std::uint64_t seed) {
    if (!g.is_connected()) throw SamplerError("input graph is disconnected");
    SampleTrace trace;
    trace.seed = seed;
    trace.exact = choose_exact(g, {});
    WorkingGraph work(g, trace.exact, SamplerOptions{}.forced_threshold);
    Rng rng(seed);
    auto order = g.edge_ids();
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_below(i)]);
    int iteration = 0;
    for (EdgeId e : order) {
        if (is_bridge(work.graph(), e)) continue;
        TraceStep step;
        step.iteration = ++iteration;
        step.edge = e;
        work.measure(step);
        step.action = Action::deleted;
        work.apply(step);
        trace.steps.push_back(std::move(step));
    }
    trace.tree = work.graph().edge_ids();
    return trace;
}

EmbeddedMultiGraph replay(const EmbeddedMultiGraph& g, const std::vector<TraceStep>& steps, std::size_t count) {
    EmbeddedMultiGraph h = g;
    for (std::size_t i = 0; i < count && i < steps.size(); ++i) {
        if (steps[i].action == Action::contracted) {
            h.contract_in_place(steps[i].edge);
        } else {
            h.remove_in_place(steps[i].edge);
        }
    }
    return h;
}

}  // namespace sptree
