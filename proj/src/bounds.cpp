#include "sptree/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sptree/pebbles.hpp"
#include "sptree/rng.hpp"
#include "sptree/spectral.hpp"

namespace sptree {

std::string claim_name(Claim c) {
    switch (c) {
        case Claim::lemma32: return "lemma32";
        case Claim::theorem31: return "theorem31";
        case Claim::eq4: return "eq4";
        case Claim::corollary: return "corollary";
    }
    return "unknown";
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

Rational power(const Rational& base, long e) {
    Rational out = 1;
    for (long i = 0; i < e; ++i) out *= base;
    return out;
}

void require_bounded(const EmbeddedMultiGraph& g, int k1, int k2) {
    const auto cert = check_bounded(g, k1, k2);
    if (cert.holds) return;
    std::string why;
    for (const auto& v : cert.violations) {
        if (!why.empty()) why += ", ";
        why += v.element + " " + std::to_string(v.id) + " (degree " + std::to_string(v.degree) + ")";
    }
    throw BoundsError("graph is not (" + std::to_string(k1) + "," + std::to_string(k2) +
                      ")-bounded on the given embedding: " + why);
}

void note_margin(BoundReport& r, double slack) { r.min_margin = std::min(r.min_margin, slack); }

double guard(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

struct Enumerated {
    DistributionTable table;
    std::vector<long> cuts;
};

Enumerated enumerate(const EmbeddedMultiGraph& g, int m, const EnumerationOptions& opts) {
    Enumerated out;
    out.table = spanning_tree_distribution(g, m, opts);
    for (const auto& e : out.table.entries) out.cuts.push_back(static_cast<long>(e.cut_edges));
    return out;
}

}  // namespace

double lambda(int k1, int k2, double alpha, double epsilon) {
    if (k1 <= 1) throw BoundsError("lambda needs k1 >= 2 (log(1 - 1/k1) is not finite and negative otherwise)");
    if (k2 < 1) throw BoundsError("lambda needs k2 >= 1");
    if (!(alpha >= 1.0)) throw BoundsError("lambda needs alpha >= 1");
    if (!(epsilon > 0.0)) throw BoundsError("lambda needs epsilon > 0");
    return (std::log(1.0 / (2.0 * k2)) - std::log(alpha)) / std::log(1.0 - 1.0 / k1) + epsilon;
}

Rational deletion_c1(int k2) { return make_rational(1, 2L * k2); }

Rational deletion_c2(int k1) { return make_rational(k1 - 1, k1); }

std::vector<EdgeId> score_deletion_set(const EmbeddedMultiGraph& g, const Partition& p) {
    std::vector<int> parent(static_cast<std::size_t>(p.m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<EdgeId> removed;
    for (EdgeId e : cut_edges(g, p).edges) {
        const Edge& ed = g.edge(e);
        const int a = find(p.district_of(ed.u));
        const int b = find(p.district_of(ed.v));
        if (a != b) {
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        } else {
            removed.push_back(e);
        }
    }
    return removed;
}

namespace {

void check_eq4(BoundReport& report, const EmbeddedMultiGraph& g, const Partition& p, const BigInt& trees, int k1,
               int k2) {
    const auto cut = cut_edges(g, p);
    const auto deletions = score_deletion_set(g, p);
    const ConstrainedRun run = run_constrained_deletions(g, deletions);
    Rational by_score(spanning_tree_score(g, p), trees);
    by_score.canonicalize();

    const long exponent = static_cast<long>(cut.size()) - p.m + 1;
    const Rational lower = power(deletion_c1(k2), exponent);
    const Rational upper = power(deletion_c2(k1), exponent);
    const std::string hash = partition_hash(p);
    ++report.instances_checked;
    ++report.applicable;

    if (run.probability != by_score) {
        report.violations.push_back("partition " + hash + ": deletion-run probability " +
                                    to_fraction_string(run.probability) + " != sp(P)/sp(G) " +
                                    to_fraction_string(by_score));
    }
    if (by_score < lower) {
        report.violations.push_back("partition " + hash + ": sp(P)/sp(G) = " + to_fraction_string(by_score) +
                                    " below c1^" + std::to_string(exponent));
    }
    if (by_score > upper) {
        report.violations.push_back("partition " + hash + ": sp(P)/sp(G) = " + to_fraction_string(by_score) +
                                    " above c2^" + std::to_string(exponent));
    }
    const double log_ratio = log_of(by_score);
    const double slack_low = log_ratio - exponent * std::log(deletion_c1(k2).get_d());
    const double slack_high = exponent * std::log(deletion_c2(k1).get_d()) - log_ratio;
    note_margin(report, std::min(slack_low, slack_high));
    report.rows.push_back({{"partition", hash},
                           {"cut_edges", std::to_string(cut.size())},
                           {"exponent", std::to_string(exponent)},
                           {"deleted", std::to_string(deletions.size())},
                           {"ratio", to_fraction_string(by_score)},
                           {"deletion_run_probability", to_fraction_string(run.probability)},
                           {"lower", to_fraction_string(lower)},
                           {"upper", to_fraction_string(upper)},
                           {"log_slack_lower", fmt(slack_low)},
                           {"log_slack_upper", fmt(slack_high)}});
}

void eq4_parameters(BoundReport& report, int k1, int k2) {
    report.parameters["k1"] = std::to_string(k1);
    report.parameters["k2"] = std::to_string(k2);
    report.parameters["c1"] = to_fraction_string(deletion_c1(k2));
    report.parameters["c2"] = to_fraction_string(deletion_c2(k1));
}

}  // namespace

BoundReport verify_eq4(const EmbeddedMultiGraph& g, const Partition& p, int k1, int k2) {
    if (k1 < 2) throw BoundsError("eq4 needs k1 >= 2");
    require_bounded(g, k1, k2);
    const auto valid = validate_partition(g, p);
    if (!valid.valid) throw BoundsError("invalid partition: " + valid.diagnostics.front());
    BoundReport report;
    report.claim = Claim::eq4;
    eq4_parameters(report, k1, k2);
    check_eq4(report, g, p, spanning_tree_number(g), k1, k2);
    return report;
}

BoundReport verify_eq4_all(const EmbeddedMultiGraph& g, int m, int k1, int k2, const EnumerationOptions& opts) {
    if (k1 < 2) throw BoundsError("eq4 needs k1 >= 2");
    require_bounded(g, k1, k2);
    BoundReport report;
    report.claim = Claim::eq4;
    eq4_parameters(report, k1, k2);
    report.parameters["m"] = std::to_string(m);
    const BigInt trees = spanning_tree_number(g);
    for_each_partition(g, m, [&](const Partition& p) { check_eq4(report, g, p, trees, k1, k2); }, opts);
    return report;
}

BoundReport verify_theorem31(const EmbeddedMultiGraph& g, int m, int k1, int k2, double alpha, double epsilon,
                             const EnumerationOptions& opts) {
    if (!(alpha >= 1.0)) throw BoundsError("theorem31 needs alpha >= 1");
    const double lam = lambda(k1, k2, alpha, epsilon);
    require_bounded(g, k1, k2);
    const Enumerated en = enumerate(g, m, opts);
    const auto& entries = en.table.entries;

    BoundReport report;
    report.claim = Claim::theorem31;
    report.parameters = {{"k1", std::to_string(k1)},
                         {"k2", std::to_string(k2)},
                         {"m", std::to_string(m)},
                         {"alpha", fmt(alpha)},
                         {"epsilon", fmt(epsilon)},
                         {"lambda", fmt(lam)},
                         {"partitions", std::to_string(entries.size())},
                         {"beta", to_fraction_string(en.table.beta)}};

    const Rational alpha_q(alpha);
    const Rational eps_q(epsilon);
    const double log_c1 = std::log(deletion_c1(k2).get_d());
    const double log_c2 = std::log(deletion_c2(k1).get_d());
    const double log_beta = log_of(en.table.beta);
    const double log_trees = log_of(en.table.graph_trees);
    const double log_alpha = std::log(alpha);
    std::vector<double> chain_slack(8, std::numeric_limits<double>::infinity());
    double max_cut_ratio = 0.0;

    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (i == j) continue;
            ++report.instances_checked;
            const long b1 = en.cuts[i];
            const long b2 = en.cuts[j];
            if (b1 > 0) max_cut_ratio = std::max(max_cut_ratio, static_cast<double>(b2) / b1);
            // Premises are required to hold with room to spare, so rounding
            // in lambda can only make a pair inapplicable.
            const bool gap = static_cast<double>(b2) >= lam * b1 * (1.0 + 1e-9);
            const bool enough = Rational(b1) * eps_q >= m - 1;
            if (!gap || !enough) continue;
            ++report.applicable;

            const Rational& pr1 = entries[i].probability;
            const Rational& pr2 = entries[j].probability;
            if (pr1 < alpha_q * pr2) {
                report.violations.push_back("pair (" + entries[i].hash + ", " + entries[j].hash + "): Pr[P1] = " +
                                            to_fraction_string(pr1) + " < alpha * Pr[P2] = " +
                                            to_fraction_string(alpha_q * pr2));
            }
            const double v[9] = {
                log_of(pr1),
                log_beta + (b1 - m + 1) * log_c1,
                log_beta + b1 * log_c1,
                log_beta + b1 * (log_c1 / log_c2) * log_c2,
                log_alpha + log_beta + (lam - epsilon) * b1 * log_c2,
                log_alpha + log_beta + (b2 - epsilon * b1) * log_c2,
                log_alpha + log_beta + (b2 - m + 1) * log_c2,
                log_alpha + log_beta + log_of(entries[j].score) - log_trees,
                log_alpha + log_of(pr2),
            };
            for (std::size_t s = 0; s < 8; ++s) {
                const double slack = v[s] - v[s + 1];
                chain_slack[s] = std::min(chain_slack[s], slack);
                if (slack < -guard(v[s])) {
                    report.violations.push_back("pair (" + entries[i].hash + ", " + entries[j].hash + "): chain step " +
                                                std::to_string(s + 1) + " increases by " + fmt(-slack));
                }
            }
            note_margin(report, log_of(pr1) - log_alpha - log_of(pr2));
        }
    }
    report.parameters["max_cut_ratio"] = fmt(max_cut_ratio);
    for (std::size_t s = 0; s < 8; ++s) {
        report.parameters["chain_step_" + std::to_string(s + 1) + "_min_slack"] =
            report.applicable > 0 ? fmt(chain_slack[s]) : "n/a";
    }
    if (report.applicable == 0) {
        report.notes.push_back("no ordered pair satisfies the premises: the largest cut ratio |cut2|/|cut1| is " +
                               fmt(max_cut_ratio) + " but lambda is " + fmt(lam) +
                               "; the check is vacuous on this instance");
    }
    return report;
}

BoundReport verify_corollary(const EmbeddedMultiGraph& g, int m, int k1, int k2, const EnumerationOptions& opts) {
    if (k1 <= 1) throw BoundsError("corollary needs k1 >= 2 (the base 1 + 1/(k1 - 1) is undefined for k1 = 1)");
    if (k2 < 1) throw BoundsError("corollary needs k2 >= 1");
    require_bounded(g, k1, k2);
    const Enumerated en = enumerate(g, m, opts);
    const auto& entries = en.table.entries;

    BoundReport report;
    report.claim = Claim::corollary;
    report.parameters = {{"k1", std::to_string(k1)},
                         {"k2", std::to_string(k2)},
                         {"m", std::to_string(m)},
                         {"partitions", std::to_string(entries.size())}};
    const double log_base = std::log(1.0 + 1.0 / (k1 - 1));
    const double log_front = std::log(1.0 / (2.0 * k2));
    auto log_alpha_of = [&](long b1, long b2) { return log_front + (static_cast<double>(b2) / b1 - 1.0) * log_base; };

    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (i == j || en.cuts[i] == 0) continue;
            ++report.instances_checked;
            const double log_alpha = log_alpha_of(en.cuts[i], en.cuts[j]);
            if (log_alpha < 1e-9) continue;  // alpha >= 1 required, with a guard
            ++report.applicable;
            Rational ratio(entries[i].score, entries[j].score);
            ratio.canonicalize();
            const double slack = log_of(ratio) - log_alpha;
            note_margin(report, slack);
            if (slack < -guard(log_alpha)) {
                report.violations.push_back("pair (" + entries[i].hash + ", " + entries[j].hash + "): ratio " +
                                            to_fraction_string(ratio) + " below alpha = " + fmt(std::exp(log_alpha)));
            }
        }
    }

    if (!entries.empty()) {
        const auto lo = static_cast<std::size_t>(std::min_element(en.cuts.begin(), en.cuts.end()) - en.cuts.begin());
        const auto hi = static_cast<std::size_t>(std::max_element(en.cuts.begin(), en.cuts.end()) - en.cuts.begin());
        if (en.cuts[lo] > 0) {
            Rational ratio(entries[lo].score, entries[hi].score);
            ratio.canonicalize();
            const double log_alpha = log_alpha_of(en.cuts[lo], en.cuts[hi]);
            const bool holds = log_of(ratio) >= log_alpha - guard(log_alpha);
            report.rows.push_back({{"pair", "min-cut vs max-cut"},
                                   {"p1", entries[lo].hash},
                                   {"p2", entries[hi].hash},
                                   {"cut1", std::to_string(en.cuts[lo])},
                                   {"cut2", std::to_string(en.cuts[hi])},
                                   {"ratio", to_fraction_string(ratio)},
                                   {"alpha", fmt(std::exp(log_alpha))},
                                   {"alpha_at_least_1", log_alpha >= 1e-9 ? "true" : "false"},
                                   {"inequality_holds", holds ? "true" : "false"}});
            if (!holds) {
                report.violations.push_back("extremal pair: ratio " + to_fraction_string(ratio) + " below alpha = " +
                                            fmt(std::exp(log_alpha)));
            }
        }
    }
    if (report.applicable == 0) {
        report.notes.push_back("no ordered pair has alpha >= 1 on this instance; only the extremal pair is reported");
    }
    return report;
}

BoundReport verify_lemma32_runs(const EmbeddedMultiGraph& g, int k1, int k2, int runs, std::uint64_t seed,
                                RunKind kind, const SamplerOptions& opts) {
    if (runs < 0) throw BoundsError("runs must be non-negative");
    require_bounded(g, k1, k2);
    const auto cert = check_bounded(g, k1, k2);
    BoundReport report;
    report.claim = Claim::lemma32;
    report.parameters = {{"k1", std::to_string(k1)},
                         {"k2", std::to_string(k2)},
                         {"runs", std::to_string(runs)},
                         {"seed", std::to_string(seed)},
                         {"mode", kind == RunKind::alg1 ? "alg1" : "deletions-only"},
                         {"v0", std::to_string(cert.v0)},
                         {"f0", std::to_string(cert.f0)}};
    long runs_outside_band = 0;
    long forced_steps = 0;
    for (int i = 0; i < runs; ++i) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
        const SampleTrace trace = kind == RunKind::alg1 ? sample_tree_alg1(g, s, EdgePolicy::lowest_id(), opts)
                                                        : sample_deletions_only(g, s);
        const Lemma32Report lemma = verify_lemma32(trace, k1, k2);
        const PebbleReport pebbles = track_pebbles(trace, g, cert.v0, cert.f0, k1, k2);
        ++report.instances_checked;
        ++report.applicable;
        if (i == 0) {
            report.parameters["statement"] = std::to_string(lemma.statement);
            report.parameters["c1"] = lemma.c1_exact ? to_fraction_string(*lemma.c1_exact) : fmt(lemma.c1);
            report.parameters["c2"] = lemma.c2_exact ? to_fraction_string(*lemma.c2_exact) : fmt(lemma.c2);
        }
        for (const auto& v : lemma.violations) report.violations.push_back("run " + std::to_string(i) + ": " + v);
        for (const auto& v : pebbles.violations) report.violations.push_back("run " + std::to_string(i) + " pebbles: " + v);
        for (const auto& pc : lemma.prefixes) {
            note_margin(report, std::min(pc.log_product - pc.log_lower, pc.log_upper - pc.log_product));
        }
        if (!lemma.outside_band.empty()) ++runs_outside_band;
        for (const auto& st : trace.steps) forced_steps += st.forced ? 1 : 0;
    }
    report.parameters["runs_with_p_outside_band"] = std::to_string(runs_outside_band);
    report.parameters["forced_steps"] = std::to_string(forced_steps);
    return report;
}

}  // namespace sptree
