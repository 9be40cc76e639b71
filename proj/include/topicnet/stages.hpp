#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "topicnet/community_rollup.hpp"
#include "topicnet/config.hpp"
#include "topicnet/cooccurrence.hpp"
#include "topicnet/graph_metrics.hpp"

namespace topicnet {

// Pipeline stages shared by the CLI subcommands and `pipeline`. Every stage
// writes its artifacts below `out` with fixed relative names and then
// refreshes the bundle manifest, so running the stages one by one yields the
// same bundle as `pipeline`.

struct RunSettings {
    std::filesystem::path out;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

struct IngestOptions {
    std::filesystem::path corpus;
    std::filesystem::path journals;
    std::filesystem::path taxonomy;
    int year = 0;
    int ni_month = 6;
};

/// Stratum labels: I, NI and NI-<Month> (e.g. NI-June).
std::string month_stratum_label(int month);

/// Writes `bags/<label>.bags.jsonl` per stratum plus `ingest_report.json`.
/// Returns the bag files in I, NI, NI-month order.
std::vector<std::filesystem::path> run_ingest(const IngestOptions& opt, const RunSettings& run);

struct BuildOptions {
    std::vector<std::filesystem::path> bags;
    std::filesystem::path taxonomy;
    CorePolicy policy = CorePolicy::intersection;
    std::optional<double> viz_threshold;
    int year = 0;
};

/// Counts, normalizes and core-extracts one network per bag file; writes
/// `networks/<label>.{edges.csv,nodes.csv,graphml}`, thresholded
/// `viz/<label>.edges.csv` when requested, and `build_report.json`. Returns
/// the network prefixes.
std::vector<std::filesystem::path> run_build(const BuildOptions& opt, const RunSettings& run);

struct AnalysisOptions {
    std::optional<std::filesystem::path> taxonomy;
    std::size_t top_k = 5;
    BetweennessNorm norm = BetweennessNorm::total;
    InterSplit split = InterSplit::full;
    std::size_t bins = 20;
    std::size_t link_bins = 30;
    std::size_t node_bins = 20;
};

/// `metrics/<label>.measures.json` and `metrics/<label>.node_ranking.csv`.
void run_metrics(const std::filesystem::path& network, const AnalysisOptions& opt, const RunSettings& run);

/// `rollup/<label>.rollup.csv` and `rollup/<label>.rollup_ranking.csv`.
void run_rollup(const std::filesystem::path& network, const AnalysisOptions& opt, const RunSettings& run);

/// Difference network `diff/<a>_vs_<b>` with its regression report, point
/// set, bins, node ranking and community rankings. Throws NodeSetMismatch.
void run_diff(const std::filesystem::path& a, const std::filesystem::path& b, const AnalysisOptions& opt,
              const RunSettings& run);

/// Link-strength (log-binned, power-law overlay) and node-strength (exponential
/// overlay) plot data under `fits/`. Fits that lack data are omitted.
void run_fit(const std::filesystem::path& network, const AnalysisOptions& opt, const RunSettings& run);

struct PipelineOptions {
    IngestOptions ingest;
    CorePolicy policy = CorePolicy::intersection;
    std::optional<double> viz_threshold = 0.08;
    AnalysisOptions analysis;
    RunSettings run;

    /// Reads keys: year, ni_month, corpus, journals, taxonomy, out, seed,
    /// workers, core_policy, viz_threshold, bins, link_bins, node_bins, top_k,
    /// betweenness_norm, inter_split. Relative paths resolve against the
    /// config file's directory.
    static PipelineOptions from_config(const Config& cfg);
};

/// ingest -> build -> metrics, rollup, fit per stratum -> diff(I, NI-month).
void run_pipeline(const PipelineOptions& opt);

}  // namespace topicnet
