#include "sptree/pebbles.hpp"

#include <algorithm>
#include <cmath>

namespace sptree {

int PebbleTracker::Sets::find(int x) const {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
}

int PebbleTracker::Sets::find(int x) {
    int root = std::as_const(*this).find(x);
    while (parent[static_cast<std::size_t>(x)] != root) {
        const int up = parent[static_cast<std::size_t>(x)];
        parent[static_cast<std::size_t>(x)] = root;
        x = up;
    }
    return root;
}

PebbleTracker::PebbleTracker(const EmbeddedMultiGraph& g, VertexId v0, FaceId f0) {
    const DualGraph dual = trace_faces(g);
    if (!g.has_vertex(v0)) throw GraphError("pebbles: v0 is not a vertex");
    if (f0 < 0 || static_cast<std::size_t>(f0) >= dual.num_faces()) throw GraphError("pebbles: f0 is not a face");

    const std::size_t nf = dual.num_faces();
    faces_.parent.resize(nf);
    faces_.pile.assign(nf, 1);
    faces_.degree.resize(nf);
    faces_.live.assign(nf, 1);
    for (std::size_t f = 0; f < nf; ++f) {
        faces_.parent[f] = static_cast<int>(f);
        faces_.degree[f] = dual.faces[f].degree();
    }
    faces_.pile[static_cast<std::size_t>(f0)] = dual.face_degree(f0);

    const auto nv = static_cast<std::size_t>(g.vertex_capacity());
    vertices_.parent.resize(nv);
    vertices_.pile.assign(nv, 1);
    vertices_.degree.assign(nv, 0);
    vertices_.live.assign(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) vertices_.parent[v] = static_cast<int>(v);
    for (VertexId v : g.vertices()) {
        vertices_.live[static_cast<std::size_t>(v)] = 1;
        vertices_.degree[static_cast<std::size_t>(v)] = g.degree(v);
    }
    vertices_.pile[static_cast<std::size_t>(v0)] = g.degree(v0);

    sides_ = dual.dual_edges;
    for (const Edge& e : g.edges()) ends_[e.id] = e;
    gone_.assign(static_cast<std::size_t>(g.edge_capacity()), 0);
    log_potential_ = std::log(static_cast<double>(g.degree(v0))) + std::log(static_cast<double>(dual.face_degree(f0)));
}

PebbleTracker::Merge PebbleTracker::apply(EdgeId e, Action action) {
    const auto it = ends_.find(e);
    if (it == ends_.end() || gone_[static_cast<std::size_t>(e)]) {
        throw GraphError("pebbles: edge " + std::to_string(e) + " is not in the graph");
    }
    gone_[static_cast<std::size_t>(e)] = 1;
    const auto [s0, s1] = sides_.at(e);
    const int fa = faces_.find(s0);
    const int fb = faces_.find(s1);
    const int va = vertices_.find(it->second.u);
    const int vb = vertices_.find(it->second.v);

    auto merge = [this](Sets& sets, int a, int b, int degree_after) {
        Merge m;
        if (a == b) {
            m.same_pile = true;
            m.x = sets.pile[static_cast<std::size_t>(a)];
            sets.degree[static_cast<std::size_t>(a)] = degree_after;
            return m;
        }
        const long pa = sets.pile[static_cast<std::size_t>(a)];
        const long pb = sets.pile[static_cast<std::size_t>(b)];
        m.x = std::min(pa, pb);
        m.y = std::max(pa, pb);
        const int keep = std::min(a, b);
        const int lose = std::max(a, b);
        sets.parent[static_cast<std::size_t>(lose)] = keep;
        sets.live[static_cast<std::size_t>(lose)] = 0;
        sets.pile[static_cast<std::size_t>(keep)] = pa + pb;
        sets.degree[static_cast<std::size_t>(keep)] = degree_after;
        log_potential_ += std::log(static_cast<double>(pa + pb)) - std::log(static_cast<double>(pa)) -
                          std::log(static_cast<double>(pb));
        return m;
    };

    if (action == Action::deleted) {
        const int da = faces_.degree[static_cast<std::size_t>(fa)];
        const int db = faces_.degree[static_cast<std::size_t>(fb)];
        if (va == vb) {
            vertices_.degree[static_cast<std::size_t>(va)] -= 2;
        } else {
            --vertices_.degree[static_cast<std::size_t>(va)];
            --vertices_.degree[static_cast<std::size_t>(vb)];
        }
        return merge(faces_, fa, fb, fa == fb ? da - 2 : da + db - 2);
    }
    if (va == vb) throw GraphError("pebbles: cannot contract a self-loop");
    if (fa == fb) {
        faces_.degree[static_cast<std::size_t>(fa)] -= 2;
    } else {
        --faces_.degree[static_cast<std::size_t>(fa)];
        --faces_.degree[static_cast<std::size_t>(fb)];
    }
    const int du = vertices_.degree[static_cast<std::size_t>(va)];
    const int dv = vertices_.degree[static_cast<std::size_t>(vb)];
    return merge(vertices_, va, vb, du + dv - 2);
}

std::map<FaceId, int> PebbleTracker::face_degrees() const {
    std::map<FaceId, int> out;
    for (std::size_t f = 0; f < faces_.parent.size(); ++f) {
        if (faces_.live[f]) out[static_cast<FaceId>(f)] = faces_.degree[f];
    }
    return out;
}

std::map<VertexId, int> PebbleTracker::vertex_degrees() const {
    std::map<VertexId, int> out;
    for (std::size_t v = 0; v < vertices_.parent.size(); ++v) {
        if (vertices_.live[v]) out[static_cast<VertexId>(v)] = vertices_.degree[v];
    }
    return out;
}

long PebbleTracker::face_pile(FaceId f) { return faces_.pile[static_cast<std::size_t>(faces_.find(f))]; }

long PebbleTracker::vertex_pile(VertexId v) { return vertices_.pile[static_cast<std::size_t>(vertices_.find(v))]; }

std::vector<long> PebbleTracker::piles() const {
    std::vector<long> out;
    for (const Sets* sets : {&faces_, &vertices_}) {
        for (std::size_t i = 0; i < sets->parent.size(); ++i) {
            if (sets->live[i]) out.push_back(sets->pile[i]);
        }
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::vector<std::string> PebbleTracker::degree_relation_violations(int k1, int k2) const {
    std::vector<std::string> out;
    for (std::size_t f = 0; f < faces_.parent.size(); ++f) {
        if (faces_.live[f] && faces_.degree[f] > static_cast<long>(k2) * faces_.pile[f]) {
            out.push_back("face " + std::to_string(f) + " has degree " + std::to_string(faces_.degree[f]) + " > k2 * " +
                          std::to_string(faces_.pile[f]) + " pebbles");
        }
    }
    for (std::size_t v = 0; v < vertices_.parent.size(); ++v) {
        if (vertices_.live[v] && vertices_.degree[v] > static_cast<long>(k1) * vertices_.pile[v]) {
            out.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(vertices_.degree[v]) +
                          " > k1 * " + std::to_string(vertices_.pile[v]) + " pebbles");
        }
    }
    return out;
}

PebbleReport track_pebbles(const SampleTrace& trace, const EmbeddedMultiGraph& g, VertexId v0, FaceId f0, int k1,
                           int k2) {
    if (k1 < 1 || k2 < 1) throw GraphError("pebbles: k1 and k2 must be positive");
    PebbleTracker tracker(g, v0, f0);
    PebbleReport report;
    report.v0 = v0;
    report.f0 = f0;
    report.p0 = static_cast<long>(g.degree(v0)) * tracker.face_pile(f0);
    report.log_p0 = tracker.log_potential();
    for (const auto& msg : tracker.degree_relation_violations(k1, k2)) report.violations.push_back("t=0: " + msg);

    for (const TraceStep& s : trace.steps) {
        const auto merge = tracker.apply(s.edge, s.action);
        PebbleStep ps;
        ps.iteration = s.iteration;
        ps.action = s.action;
        ps.x = merge.x;
        ps.y = merge.y;
        ps.log_potential = tracker.log_potential();
        const long k = s.action == Action::deleted ? k2 : k1;
        ps.bound = make_rational(1, 2 * k);
        if (s.p_exact) {
            // p * xy / (x + y) >= 1 / (2k), cross-multiplied
            const Rational ratio = merge.same_pile ? *s.p_exact : *s.p_exact * merge.x * merge.y / (merge.x + merge.y);
            ps.ratio = ratio.get_d();
            ps.holds = ratio >= ps.bound;
        } else {
            const double xy = merge.same_pile ? 1.0 : static_cast<double>(merge.x) * merge.y / (merge.x + merge.y);
            ps.ratio = s.p * xy;
            ps.holds = ps.ratio >= ps.bound.get_d() * (1.0 - 1e-9);
        }
        if (!ps.holds) {
            report.violations.push_back("iteration " + std::to_string(s.iteration) + ": p*P_prev/P = " +
                                        std::to_string(ps.ratio) + " < " + to_fraction_string(ps.bound));
        }
        for (const auto& msg : tracker.degree_relation_violations(k1, k2)) {
            report.violations.push_back("iteration " + std::to_string(s.iteration) + ": " + msg);
        }
        report.steps.push_back(ps);
    }
    report.log_pt = tracker.log_potential();
    report.final_holds = report.log_pt >= report.log_p0 - 1e-12;
    if (!report.final_holds) report.violations.push_back("final potential fell below P_0");
    return report;
}

Lemma32Report verify_lemma32(const SampleTrace& trace, int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw GraphError("lemma bounds: k1 and k2 must be positive");
    Lemma32Report report;
    report.k1 = k1;
    report.k2 = k2;
    const bool deletions_only = std::all_of(trace.steps.begin(), trace.steps.end(),
                                            [](const TraceStep& s) { return s.action == Action::deleted; });
    report.statement = deletions_only ? 2 : 1;
    if (deletions_only) {
        report.c1_exact = make_rational(1, 2L * k2);
        report.c2_exact = make_rational(k1 - 1, k1);
        report.c1 = report.c1_exact->get_d();
        report.c2 = report.c2_exact->get_d();
    } else {
        const int hi = std::max(k1, k2);
        const int lo = std::min(k1, k2);
        if (lo < 2) throw GraphError("lemma bounds: the mixed-run constants need min(k1, k2) >= 2");
        report.c1_exact = make_rational(1, 2L * hi);
        report.c1 = report.c1_exact->get_d();
        report.c2 = std::pow(1.0 - 1.0 / hi, 1.0 / (2.0 * (lo - 1)));
    }
    const double log_c1 = std::log(report.c1);
    const double log_c2 = report.c2 > 0.0 ? std::log(report.c2) : -INFINITY;
    const bool exact = std::all_of(trace.steps.begin(), trace.steps.end(),
                                   [](const TraceStep& s) { return s.p_exact.has_value(); });

    Rational product = 1;
    Rational c1_power = 1;
    Rational c2_power = 1;
    double log_product = 0.0;
    int t = 0;
    for (const TraceStep& s : trace.steps) {
        ++t;
        PrefixCheck pc;
        pc.t = t;
        log_product += s.p_exact ? log_of(*s.p_exact) : std::log(s.p);
        pc.log_product = log_product;
        pc.log_lower = t * log_c1;
        pc.log_upper = t * log_c2;
        const double guard = 1e-9 * std::max(1.0, std::abs(log_product));
        if (exact) {
            product *= *s.p_exact;
            c1_power *= *report.c1_exact;
            pc.lower_holds = product >= c1_power;
            if (report.c2_exact) {
                c2_power *= *report.c2_exact;
                pc.upper_holds = product <= c2_power;
            } else {
                pc.upper_holds = log_product <= pc.log_upper + guard;
            }
        } else {
            pc.lower_holds = log_product >= pc.log_lower - guard;
            pc.upper_holds = log_product <= pc.log_upper + guard;
        }
        if (!pc.lower_holds) report.violations.push_back("t=" + std::to_string(t) + ": product below c1^t");
        if (!pc.upper_holds) report.violations.push_back("t=" + std::to_string(t) + ": product above c2^t");
        if (s.p < report.c1 || s.p > report.c2) report.outside_band.push_back(s.iteration);
        report.prefixes.push_back(pc);
    }
    return report;
}

}  // namespace sptree
