#pragma once

#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>

#include "sptree/bounds.hpp"
#include "sptree/counterexample.hpp"
#include "sptree/graph.hpp"
#include "sptree/partition.hpp"
#include "sptree/pebbles.hpp"
#include "sptree/recom.hpp"
#include "sptree/sampler.hpp"
#include "sptree/spectral.hpp"

namespace sptree {

// Exact values are written as strings: integers in decimal, rationals as
// "num/den". Floats appear only for quantities that are inexact anyway.

// Partition document: {"m": 2, "assignment": {"0": 0, "1": 1, ...}}
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& doc);
Partition load_partition(const std::filesystem::path& path);

nlohmann::json certificate_to_json(const BoundednessCertificate& cert);
nlohmann::json tree_count_to_json(const TreeCount& count);
nlohmann::json resistance_to_json(const ResistanceResult& r);

nlohmann::json trace_step_to_json(const TraceStep& s);
/// One JSON object per line, one line per iteration.
void write_trace_jsonl(std::ostream& out, const SampleTrace& trace);
nlohmann::json pebble_report_to_json(const PebbleReport& r);

nlohmann::json distribution_to_json(const DistributionTable& t);
/// partition-hash,cut-edges,score,probability-numerator,probability-denominator
void write_distribution_csv(std::ostream& out, const DistributionTable& t);

ChainConfig chain_config_from_json(const nlohmann::json& doc, ChainConfig base = {});
/// step,cut_edges,partition_hash
void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats);
nlohmann::json ensemble_summary_to_json(const EnsembleStats& stats);

nlohmann::json bound_report_to_json(const BoundReport& r);

nlohmann::json theorem33_to_json(const Theorem33Result& r);
nlohmann::json theorem34_to_json(const Theorem34Bound& bound, const ResistanceChain& chain);

}  // namespace sptree
