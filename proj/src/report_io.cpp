#include "sptree/report_io.hpp"

#include <cmath>
#include <fstream>

namespace sptree {

using nlohmann::json;

namespace {

json float_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json partition_to_json(const Partition& p) {
    json assignment = json::object();
    for (const auto& [v, d] : p.assignment) assignment[std::to_string(v)] = d;
    return {{"m", p.m}, {"assignment", std::move(assignment)}};
}

Partition partition_from_json(const json& doc) {
    try {
        Partition p;
        p.m = doc.at("m").get<int>();
        for (const auto& [key, value] : doc.at("assignment").items()) {
            std::size_t used = 0;
            const int v = std::stoi(key, &used);
            if (used != key.size()) throw PartitionError("bad vertex key '" + key + "'");
            p.assignment[v] = value.get<int>();
        }
        return p;
    } catch (const json::exception& e) {
        throw PartitionError(std::string("malformed partition document: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw PartitionError("malformed partition document: non-numeric vertex key");
    }
}

Partition load_partition(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PartitionError("cannot open partition file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw PartitionError("partition file " + path.string() + " is not valid JSON: " + e.what());
    }
    return partition_from_json(doc);
}

json certificate_to_json(const BoundednessCertificate& cert) {
    json violations = json::array();
    for (const auto& v : cert.violations) {
        violations.push_back({{"element", v.element}, {"id", v.id}, {"degree", v.degree}});
    }
    return {{"k1", cert.k1},       {"k2", cert.k2}, {"v0", cert.v0},
            {"f0", cert.f0},       {"holds", cert.holds}, {"violations", std::move(violations)},
            {"scope", cert.scope}};
}

json tree_count_to_json(const TreeCount& count) {
    json out = {{"exact", count.exact}, {"log_spanning_trees", float_or_null(count.log_value)}};
    out["spanning_trees"] = count.exact ? json(to_string(count.value)) : json(nullptr);
    return out;
}

json resistance_to_json(const ResistanceResult& r) {
    json out = {{"edge", r.edge},
                {"method", r.method == ResistanceMethod::laplacian_solve ? "laplacian-solve" : "tree-ratio"},
                {"approx", r.approx}};
    out["exact"] = r.exact ? json(to_fraction_string(*r.exact)) : json(nullptr);
    return out;
}

json trace_step_to_json(const TraceStep& s) {
    json out = {{"i", s.iteration}, {"e", s.edge}, {"action", action_name(s.action)}};
    out["r"] = s.r_exact ? json(to_fraction_string(*s.r_exact)) : json(s.r);
    out["p"] = s.p_exact ? json(to_fraction_string(*s.p_exact)) : json(s.p);
    if (s.forced) out["forced"] = true;
    if (s.ambiguous) out["ambiguous"] = true;
    return out;
}

void write_trace_jsonl(std::ostream& out, const SampleTrace& trace) {
    for (const TraceStep& s : trace.steps) out << trace_step_to_json(s).dump() << '\n';
}

json pebble_report_to_json(const PebbleReport& r) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"i", s.iteration},
                         {"action", action_name(s.action)},
                         {"x", s.x},
                         {"y", s.y},
                         {"log_potential", s.log_potential},
                         {"ratio", s.ratio},
                         {"bound", to_fraction_string(s.bound)},
                         {"holds", s.holds}});
    }
    return {{"v0", r.v0},         {"f0", r.f0},         {"p0", r.p0},
            {"log_p0", r.log_p0}, {"log_pt", r.log_pt}, {"final_holds", r.final_holds},
            {"violations", r.violations}, {"steps", std::move(steps)}};
}

json distribution_to_json(const DistributionTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries) {
        entries.push_back({{"hash", e.hash},
                           {"cut_edges", e.cut_edges},
                           {"score", to_string(e.score)},
                           {"probability", to_fraction_string(e.probability)},
                           {"partition", partition_to_json(e.partition)}});
    }
    return {{"partitions", t.entries.size()},
            {"total_score", to_string(t.total_score)},
            {"spanning_trees", to_string(t.graph_trees)},
            {"beta", to_fraction_string(t.beta)},
            {"entries", std::move(entries)}};
}

void write_distribution_csv(std::ostream& out, const DistributionTable& t) {
    out << "partition-hash,cut-edges,score,probability-numerator,probability-denominator\n";
    for (const auto& e : t.entries) {
        out << e.hash << ',' << e.cut_edges << ',' << to_string(e.score) << ',' << e.probability.get_num().get_str()
            << ',' << e.probability.get_den().get_str() << '\n';
    }
}

ChainConfig chain_config_from_json(const json& doc, ChainConfig base) {
    try {
        if (doc.contains("steps")) base.steps = doc.at("steps").get<long>();
        if (doc.contains("seed")) base.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("balance_tolerance")) base.balance_tolerance = doc.at("balance_tolerance").get<int>();
        if (doc.contains("max_resample")) base.max_resample = doc.at("max_resample").get<int>();
        if (doc.contains("tree_sampler")) {
            const auto name = doc.at("tree_sampler").get<std::string>();
            if (name == "wilson") {
                base.sampler = TreeSampler::wilson;
            } else if (name == "alg1") {
                base.sampler = TreeSampler::alg1;
            } else {
                throw ChainError("tree_sampler must be \"wilson\" or \"alg1\"");
            }
        }
    } catch (const json::exception& e) {
        throw ChainError(std::string("malformed chain config: ") + e.what());
    }
    if (base.steps < 0) throw ChainError("steps must be non-negative");
    if (base.balance_tolerance < 0) throw ChainError("balance_tolerance must be non-negative");
    if (base.max_resample < 0) throw ChainError("max_resample must be non-negative");
    return base;
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "step,cut_edges,partition_hash\n";
    for (const auto& s : stats.samples) out << s.step << ',' << s.cut_edges << ',' << s.hash << '\n';
}

json ensemble_summary_to_json(const EnsembleStats& stats) {
    json histogram = json::object();
    for (const auto& [cut, count] : stats.histogram) histogram[std::to_string(cut)] = count;
    json counts = json::object();
    for (const auto& [hash, count] : stats.partition_counts) counts[hash] = count;
    return {{"samples", stats.samples.size()},
            {"acceptance", stats.acceptance},
            {"skipped", stats.skipped},
            {"histogram", std::move(histogram)},
            {"partition_counts", std::move(counts)},
            {"final_partition", partition_to_json(stats.final_partition)}};
}

json bound_report_to_json(const BoundReport& r) {
    return {{"claim", claim_name(r.claim)},
            {"instances_checked", r.instances_checked},
            {"applicable", r.applicable},
            {"violations", r.violations},
            {"ok", r.ok()},
            {"min_margin", float_or_null(r.min_margin)},
            {"parameters", r.parameters},
            {"rows", r.rows},
            {"notes", r.notes}};
}

json theorem33_to_json(const Theorem33Result& r) {
    json out = {{"theorem", "3.3"},
                {"n", r.n},
                {"A_n", to_string(r.a_n)},
                {"argument", to_string(r.argument)},
                {"argument_integral", r.argument_integral},
                {"ratio", to_fraction_string(r.ratio)},
                {"ratio_approx", r.ratio.get_d()},
                {"ratio_bound", to_fraction_string(r.ratio_bound)},
                {"ratio_ok", r.ratio_ok},
                {"cut_ratio", to_fraction_string(r.cut_ratio)}};
    if (r.score1) {
        out["score1"] = to_string(*r.score1);
        out["score2"] = to_string(*r.score2);
        out["uncancelled_matches"] = r.uncancelled_matches;
    }
    return out;
}

json theorem34_to_json(const Theorem34Bound& bound, const ResistanceChain& chain) {
    json claims = json::array();
    for (bool ok : chain.bound_ok) claims.push_back(ok);
    return {{"theorem", "3.4"},
            {"n", bound.n},
            {"cut1", bound.cut1},
            {"cut2", to_string(bound.cut2)},
            {"log2_upper_p1", bound.log2_upper_p1},
            {"log2_lower_p2", bound.log2_lower_p2},
            {"log2_ratio_upper", bound.log2_ratio_upper},
            {"ratio_bound_below_1", bound.log2_ratio_upper < 0.0},
            {"resistances", chain.values},
            {"resistance_claims", std::move(claims)},
            {"resistance_claims_ok", chain.all_ok()},
            {"exact_steps", chain.exact_steps}};
}

}  // namespace sptree
