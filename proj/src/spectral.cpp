#include "sptree/spectral.hpp"

#include <limits>
#include <set>
#include <stdexcept>

#include "sptree/linalg.hpp"

namespace sptree {

BigInt spanning_tree_number(const EmbeddedMultiGraph& g) {
    if (g.num_vertices() == 0) return 0;
    if (g.num_vertices() == 1) return 1;
    if (!g.is_connected()) return 0;
    const linalg::VertexIndex index(g);
    const auto lap = linalg::laplacian(g, index);
    return linalg::bareiss_determinant(linalg::without(lap, lap.n - 1));
}

TreeCount count_spanning_trees(const EmbeddedMultiGraph& g, const SpectralOptions& opts) {
    TreeCount out;
    if (g.num_vertices() <= opts.exact_count_max_vertices) {
        out.value = spanning_tree_number(g);
        out.log_value = out.value > 0 ? log_of(out.value) : -std::numeric_limits<double>::infinity();
        return out;
    }
    out.exact = false;
    if (!g.is_connected()) {
        out.log_value = -std::numeric_limits<double>::infinity();
        return out;
    }
    const linalg::VertexIndex index(g);
    const auto lap = linalg::laplacian(g, index);
    out.log_value = linalg::Cholesky(linalg::to_double(linalg::without(lap, lap.n - 1))).log_determinant();
    return out;
}

FlowSolution solve_flow(const EmbeddedMultiGraph& g, VertexId source, VertexId sink, const SpectralOptions& opts) {
    if (!g.has_vertex(source) || !g.has_vertex(sink)) throw GraphError("solve_flow: unknown terminal");
    if (source == sink) throw GraphError("solve_flow: source and sink coincide");
    if (!g.is_connected()) throw GraphError("solve_flow: graph is disconnected");

    const linalg::VertexIndex index(g);
    const auto lap = linalg::laplacian(g, index);
    const auto sink_row = static_cast<std::size_t>(index.row(sink));
    const auto reduced = linalg::without(lap, sink_row);
    auto reduced_row = [&](VertexId v) {
        const auto r = static_cast<std::size_t>(index.row(v));
        return r < sink_row ? r : r - 1;
    };

    FlowSolution sol;
    sol.source = source;
    sol.sink = sink;
    const std::size_t m = reduced.n;

    if (g.num_vertices() <= opts.exact_resistance_max_vertices) {
        linalg::Dense<Rational> a(m);
        for (std::size_t i = 0; i < reduced.a.size(); ++i) a.a[i] = static_cast<long>(reduced.a[i]);
        std::vector<Rational> rhs(m, Rational(0));
        rhs[reduced_row(source)] = 1;
        const auto x = linalg::solve_exact(std::move(a), std::move(rhs));
        sol.exact = true;
        for (VertexId v : index.ids) sol.voltage[v] = v == sink ? Rational(0) : x[reduced_row(v)];
        for (const Edge& e : g.edges()) sol.current[e.id] = sol.voltage[e.u] - sol.voltage[e.v];
        for (const auto& [v, q] : sol.voltage) sol.voltage_approx[v] = q.get_d();
        for (const auto& [eid, q] : sol.current) sol.current_approx[eid] = q.get_d();
        return sol;
    }

    std::vector<double> rhs(m, 0.0);
    rhs[reduced_row(source)] = 1.0;
    const auto solved = linalg::solve_spd(linalg::to_double(reduced), rhs);
    sol.residual = solved.residual;
    for (VertexId v : index.ids) sol.voltage_approx[v] = v == sink ? 0.0 : solved.x[reduced_row(v)];
    for (const Edge& e : g.edges()) sol.current_approx[e.id] = sol.voltage_approx[e.u] - sol.voltage_approx[e.v];
    return sol;
}

ResistanceResult effective_resistance(const EmbeddedMultiGraph& g, EdgeId e, ResistanceMethod method,
                                      const SpectralOptions& opts) {
    const Edge& ed = g.edge(e);
    if (!g.is_connected()) throw GraphError("effective_resistance: graph is disconnected");
    if (method == ResistanceMethod::automatic) {
        method = g.num_vertices() <= opts.exact_resistance_max_vertices ? ResistanceMethod::tree_ratio
                                                                        : ResistanceMethod::laplacian_solve;
    }
    ResistanceResult out;
    out.edge = e;
    out.method = method;
    if (ed.is_loop()) {
        out.exact = Rational(0);
        out.approx = 0.0;
        return out;
    }
    if (method == ResistanceMethod::tree_ratio) {
        const BigInt all = spanning_tree_number(g);
        const BigInt with_e = spanning_tree_number(g.contract(e));
        Rational r(with_e, all);
        r.canonicalize();
        out.approx = r.get_d();
        out.exact = std::move(r);
        return out;
    }
    SpectralOptions float_only = opts;
    float_only.exact_resistance_max_vertices = 0;
    const FlowSolution flow = solve_flow(g, ed.u, ed.v, float_only);
    out.approx = flow.voltage_approx.at(ed.u) - flow.voltage_approx.at(ed.v);
    return out;
}

namespace {

int loopless_degree(const EmbeddedMultiGraph& g, VertexId v) {
    int d = 0;
    for (const Dart& dart : g.rotation(v)) d += g.edge(dart.edge).is_loop() ? 0 : 1;
    return d;
}

Rational exact_resistance(const EmbeddedMultiGraph& g, EdgeId e) {
    return *effective_resistance(g, e, ResistanceMethod::tree_ratio).exact;
}

}  // namespace

bool check_cycle_bound(const EmbeddedMultiGraph& g, EdgeId e, const std::vector<EdgeId>& cycle) {
    if (cycle.size() < 2 || cycle.front() != e) throw GraphError("cycle must start with the edge and have length >= 2");
    const Edge& first = g.edge(e);
    if (first.is_loop()) throw GraphError("cycle bound needs a non-loop edge");
    std::set<EdgeId> used{e};
    std::set<VertexId> visited{first.u};
    VertexId at = first.v;
    for (std::size_t i = 1; i < cycle.size(); ++i) {
        const Edge& next = g.edge(cycle[i]);
        if (next.is_loop() || !used.insert(next.id).second) throw GraphError("cycle repeats an edge or uses a loop");
        if (next.u != at && next.v != at) throw GraphError("cycle is not a closed walk");
        if (!visited.insert(at).second) throw GraphError("cycle is not simple");
        at = next.other(at);
    }
    if (at != first.u) throw GraphError("cycle does not close at the edge's start");
    const auto k = static_cast<long>(cycle.size());
    return exact_resistance(g, e) <= make_rational(k - 1, k);
}

bool check_degree_bound(const EmbeddedMultiGraph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) throw GraphError("degree bound needs a non-loop edge");
    const int d = std::min(loopless_degree(g, ed.u), loopless_degree(g, ed.v));
    return exact_resistance(g, e) >= make_rational(1, d);
}

}  // namespace sptree
