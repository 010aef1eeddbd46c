// Command-line front-end. Exit codes: 0 ok, 1 input error, 2 the requested
// verification found violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sptree/bounds.hpp"
#include "sptree/counterexample.hpp"
#include "sptree/graph_io.hpp"
#include "sptree/partition.hpp"
#include "sptree/pebbles.hpp"
#include "sptree/recom.hpp"
#include "sptree/report_io.hpp"
#include "sptree/sampler.hpp"
#include "sptree/spectral.hpp"

using nlohmann::json;
using namespace sptree;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Sink {
    std::string path;
    std::ofstream file;
    std::ostream& get() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw InputError("cannot open output file " + path);
        }
        return file;
    }
};

void emit(Sink& sink, const json& doc) { sink.get() << doc.dump(2) << '\n'; }

std::vector<EdgeId> parse_id_list(const std::string& text) {
    std::vector<EdgeId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError("bad edge id '" + item + "' in list");
        }
    }
    return out;
}

int error_exit(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", message}, {"kind", kind}}.dump() << std::endl;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning tree sampling, partition scores and bound verification"};
    app.require_subcommand(1);

    Sink sink;
    std::string graph_path;
    std::string partition_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    int m = 0;
    int k1 = 0;
    int k2 = 0;
    double alpha = 1.0;
    double epsilon = 1.0;

    auto add_graph = [&](CLI::App* sub) { sub->add_option("--graph", graph_path, "graph JSON file")->required(); };
    auto add_output = [&](CLI::App* sub) { sub->add_option("--output", sink.path, "write to file instead of stdout"); };

    auto* count = app.add_subcommand("count-trees", "number of spanning trees");
    add_graph(count);
    add_output(count);

    auto* resist = app.add_subcommand("resistance", "effective resistance of edges");
    add_graph(resist);
    add_output(resist);
    std::optional<EdgeId> edge;
    std::string method = "auto";
    resist->add_option("--edge", edge, "edge id (default: every edge)");
    resist->add_option("--method", method, "auto, tree-ratio or laplacian")
        ->check(CLI::IsMember({"auto", "tree-ratio", "laplacian"}));

    auto* sample = app.add_subcommand("sample-tree", "draw a uniform spanning tree");
    add_graph(sample);
    add_output(sample);
    sample->add_option("--seed", seed, "RNG seed")->required();
    std::string sampler_name = "alg1";
    std::string policy_name = "lowest-id";
    std::string order_text;
    std::string trace_path;
    std::string mode_name = "auto";
    bool with_pebbles = false;
    sample->add_option("--sampler", sampler_name)->check(CLI::IsMember({"alg1", "wilson"}));
    sample->add_option("--policy", policy_name)->check(CLI::IsMember({"lowest-id", "given-order", "boundary-first"}));
    sample->add_option("--order", order_text, "comma-separated edge ids for given-order / boundary-first");
    sample->add_option("--trace", trace_path, "write the iteration trace as JSON lines");
    sample->add_option("--mode", mode_name)->check(CLI::IsMember({"auto", "exact", "float"}));
    sample->add_flag("--pebbles", with_pebbles, "track the pebble potential (needs --k1 --k2)");
    sample->add_option("--k1", k1);
    sample->add_option("--k2", k2);

    auto* enumerate = app.add_subcommand("enumerate", "list balanced connected m-partitions");
    add_graph(enumerate);
    add_output(enumerate);
    enumerate->add_option("--m", m)->required();

    auto* dist = app.add_subcommand("distribution", "exact spanning tree distribution over m-partitions");
    add_graph(dist);
    add_output(dist);
    dist->add_option("--m", m)->required();
    dist->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* recom = app.add_subcommand("recom", "run the ReCom chain");
    add_graph(recom);
    add_output(recom);
    recom->add_option("--partition", partition_path, "start partition JSON")->required();
    recom->add_option("--seed", seed, "RNG seed")->required();
    std::string config_path;
    ChainConfig cfg;
    std::string chain_sampler = "wilson";
    recom->add_option("--config", config_path, "chain config JSON (flags override it)");
    auto* steps_opt = recom->add_option("--steps", cfg.steps);
    auto* tol_opt = recom->add_option("--tolerance", cfg.balance_tolerance);
    auto* resample_opt = recom->add_option("--max-resample", cfg.max_resample);
    auto* chain_sampler_opt = recom->add_option("--sampler", chain_sampler)->check(CLI::IsMember({"alg1", "wilson"}));
    recom->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "check a bound on a graph");
    std::string claim;
    verify->add_option("--claim", claim)->required()->check(
        CLI::IsMember({"lemma32", "theorem31", "eq4", "corollary"}));
    add_graph(verify);
    add_output(verify);
    verify->add_option("--m", m);
    verify->add_option("--k1", k1)->required();
    verify->add_option("--k2", k2)->required();
    verify->add_option("--alpha", alpha);
    verify->add_option("--epsilon", epsilon);
    verify->add_option("--partition", partition_path, "eq4: check one partition instead of all");
    int runs = 100;
    std::string run_mode = "alg1";
    verify->add_option("--runs", runs, "lemma32: number of seeded runs");
    verify->add_option("--seed", seed, "lemma32: base seed");
    verify->add_option("--mode", run_mode, "lemma32: alg1 or deletions")->check(CLI::IsMember({"alg1", "deletions"}));

    auto* lam = app.add_subcommand("lambda", "boundary-ratio threshold");
    add_output(lam);
    lam->add_option("--k1", k1)->required();
    lam->add_option("--k2", k2)->required();
    lam->add_option("--alpha", alpha)->required();
    lam->add_option("--epsilon", epsilon)->required();

    auto* counter = app.add_subcommand("counterexample", "formula checks for the unbounded families");
    add_output(counter);
    std::string theorem;
    long n = 0;
    long i_max = 50;
    counter->add_option("--theorem", theorem)->required()->check(CLI::IsMember({"3.3", "3.4"}));
    counter->add_option("--n", n)->required();
    counter->add_option("--i-max", i_max, "3.4: resistance recurrence length");

    auto* bounded = app.add_subcommand("check-bounded", "(k1,k2)-boundedness of the given embedding");
    add_graph(bounded);
    add_output(bounded);
    bounded->add_option("--k1", k1)->required();
    bounded->add_option("--k2", k2)->required();

    auto* grid = app.add_subcommand("make-grid", "write a w x h grid graph");
    add_output(grid);
    int w = 0;
    int h = 0;
    grid->add_option("--width", w, "columns")->required();
    grid->add_option("--height", h, "rows")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_exit("usage", e.what());
    }

    try {
        if (count->parsed()) {
            emit(sink, tree_count_to_json(count_spanning_trees(load_graph(graph_path))));
        } else if (resist->parsed()) {
            const auto g = load_graph(graph_path);
            const auto how = method == "tree-ratio" ? ResistanceMethod::tree_ratio
                             : method == "laplacian" ? ResistanceMethod::laplacian_solve
                                                     : ResistanceMethod::automatic;
            if (edge) {
                if (!g.has_edge(*edge)) throw InputError("no edge with id " + std::to_string(*edge));
                emit(sink, resistance_to_json(effective_resistance(g, *edge, how)));
            } else {
                json all = json::array();
                for (EdgeId e : g.edge_ids()) all.push_back(resistance_to_json(effective_resistance(g, e, how)));
                emit(sink, {{"resistances", std::move(all)}});
            }
        } else if (sample->parsed()) {
            const auto g = load_graph(graph_path);
            json out = {{"seed", *seed}, {"sampler", sampler_name}};
            if (sampler_name == "wilson") {
                out["tree"] = sample_tree_wilson(g, *seed);
            } else {
                EdgePolicy policy;
                if (policy_name == "given-order") policy = EdgePolicy::given(parse_id_list(order_text));
                if (policy_name == "boundary-first") policy = EdgePolicy::boundary_first(parse_id_list(order_text));
                SamplerOptions opts;
                opts.mode = mode_name == "exact" ? SamplerMode::exact
                            : mode_name == "float" ? SamplerMode::floating
                                                   : SamplerMode::automatic;
                const auto trace = sample_tree_alg1(g, *seed, policy, opts);
                out["tree"] = trace.tree;
                out["exact"] = trace.exact;
                out["iterations"] = trace.steps.size();
                out["path_probability"] =
                    trace.exact ? json(to_fraction_string(trace.path_probability())) : json(nullptr);
                out["log_path_probability"] = trace.log_path_probability();
                if (!trace_path.empty()) {
                    std::ofstream tf(trace_path);
                    if (!tf) throw InputError("cannot open trace file " + trace_path);
                    write_trace_jsonl(tf, trace);
                }
                if (with_pebbles) {
                    if (k1 < 1 || k2 < 1) throw InputError("--pebbles needs --k1 and --k2");
                    const auto cert = check_bounded(g, k1, k2);
                    if (!cert.holds) throw InputError("graph is not (k1,k2)-bounded on its embedding");
                    const auto report = track_pebbles(trace, g, cert.v0, cert.f0, k1, k2);
                    out["pebbles"] = pebble_report_to_json(report);
                    emit(sink, out);
                    return report.ok() ? 0 : 2;
                }
            }
            emit(sink, out);
        } else if (enumerate->parsed()) {
            const auto g = load_graph(graph_path);
            json list = json::array();
            for_each_partition(g, m, [&](const Partition& p) {
                json item = partition_to_json(p);
                item["hash"] = partition_hash(p);
                item["cut_edges"] = cut_edges(g, p).size();
                list.push_back(std::move(item));
            });
            emit(sink, {{"m", m}, {"count", list.size()}, {"partitions", std::move(list)}});
        } else if (dist->parsed()) {
            const auto table = spanning_tree_distribution(load_graph(graph_path), m);
            if (format == "csv") {
                write_distribution_csv(sink.get(), table);
            } else {
                emit(sink, distribution_to_json(table));
            }
        } else if (recom->parsed()) {
            const auto g = load_graph(graph_path);
            const auto p0 = load_partition(partition_path);
            ChainConfig base;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw InputError("cannot open config file " + config_path);
                json doc;
                try {
                    in >> doc;
                } catch (const json::exception& e) {
                    throw InputError(std::string("config is not valid JSON: ") + e.what());
                }
                base = chain_config_from_json(doc);
            }
            if (steps_opt->count()) base.steps = cfg.steps;
            if (tol_opt->count()) base.balance_tolerance = cfg.balance_tolerance;
            if (resample_opt->count()) base.max_resample = cfg.max_resample;
            if (chain_sampler_opt->count()) base.sampler = chain_sampler == "alg1" ? TreeSampler::alg1 : TreeSampler::wilson;
            base.seed = *seed;
            const auto stats = run_chain(g, p0, base);
            if (format == "csv") {
                write_ensemble_csv(sink.get(), stats);
            } else {
                emit(sink, ensemble_summary_to_json(stats));
            }
        } else if (verify->parsed()) {
            const auto g = load_graph(graph_path);
            BoundReport report;
            if (claim == "lemma32") {
                if (!seed) throw InputError("verify --claim lemma32 needs --seed");
                report = verify_lemma32_runs(g, k1, k2, runs, *seed,
                                             run_mode == "alg1" ? RunKind::alg1 : RunKind::deletions_only);
            } else if (claim == "eq4" && !partition_path.empty()) {
                report = verify_eq4(g, load_partition(partition_path), k1, k2);
            } else {
                if (m < 1) throw InputError("verify --claim " + claim + " needs --m");
                if (claim == "eq4") report = verify_eq4_all(g, m, k1, k2);
                if (claim == "theorem31") report = verify_theorem31(g, m, k1, k2, alpha, epsilon);
                if (claim == "corollary") report = verify_corollary(g, m, k1, k2);
            }
            emit(sink, bound_report_to_json(report));
            return report.ok() ? 0 : 2;
        } else if (lam->parsed()) {
            emit(sink, {{"k1", k1}, {"k2", k2}, {"alpha", alpha}, {"epsilon", epsilon},
                        {"lambda", lambda(k1, k2, alpha, epsilon)}});
        } else if (counter->parsed()) {
            if (theorem == "3.3") {
                if (n > 1000000) throw InputError("n is too large for the exact A(n) computation");
                GridTreeSequence a;
                const auto r = theorem33_scores(static_cast<int>(n), a);
                emit(sink, theorem33_to_json(r));
                return r.ratio_ok && r.uncancelled_matches ? 0 : 2;
            }
            const auto bound = theorem34_ratio_bound(n);
            const auto chain = theorem34_resistances(n, i_max);
            emit(sink, theorem34_to_json(bound, chain));
            return chain.all_ok() ? 0 : 2;
        } else if (bounded->parsed()) {
            const auto cert = check_bounded(load_graph(graph_path), k1, k2);
            emit(sink, certificate_to_json(cert));
        } else if (grid->parsed()) {
            const auto g = make_grid(w, h);
            if (sink.path.empty()) {
                emit(sink, graph_to_json(g));
            } else {
                save_graph(g, sink.path);
            }
        }
    } catch (const PartitionError& e) {
        return error_exit("partition", e.what());
    } catch (const GraphError& e) {
        return error_exit("graph", e.what());
    } catch (const SamplerError& e) {
        return error_exit("sampler", e.what());
    } catch (const ChainError& e) {
        return error_exit("chain", e.what());
    } catch (const BoundsError& e) {
        return error_exit("bounds", e.what());
    } catch (const CounterexampleError& e) {
        return error_exit("counterexample", e.what());
    } catch (const InputError& e) {
        return error_exit("input", e.what());
    } catch (const std::exception& e) {
        return error_exit("internal", e.what());
    }
    return 0;
}
