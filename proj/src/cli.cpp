#include "topicnet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "topicnet/diff_analysis.hpp"
#include "topicnet/error.hpp"
#include "topicnet/log.hpp"
#include "topicnet/pubmed_client.hpp"
#include "topicnet/report.hpp"
#include "topicnet/stages.hpp"

namespace topicnet::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    int year = 0;
    int ni_month = 6;
    std::string taxonomy;
    std::string journals;
    std::string corpus;
    std::string out;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    std::string core_policy = "intersection";
    double viz_threshold = 0.0;
    std::size_t bins = 20;
    std::size_t link_bins = 30;
    std::size_t node_bins = 20;
    std::size_t top_k = 5;
    std::string betweenness_norm = "total";
    std::string inter_split = "full";
    std::vector<std::string> bags;
    std::string network;
    std::string network_b;
    // fetch
    int month = 0;
    double rate_limit = 0.0;
    std::size_t batch_size = 500;
    std::string base_url = kEutilsBaseUrl;
    std::string query = "journal article[pt]";
};

RunSettings settings(const Flags& f) { return {fs::path(f.out), f.seed, f.workers}; }

AnalysisOptions analysis(const Flags& f) {
    AnalysisOptions a;
    if (!f.taxonomy.empty()) a.taxonomy = fs::path(f.taxonomy);
    a.top_k = f.top_k;
    a.norm = parse_betweenness_norm(f.betweenness_norm);
    a.split = parse_inter_split(f.inter_split);
    a.bins = f.bins;
    a.link_bins = f.link_bins;
    a.node_bins = f.node_bins;
    return a;
}

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--out", f.out, "Output bundle directory")->required();
    cmd->add_option("--seed", f.seed, "Louvain seed")->capture_default_str();
    cmd->add_option("--workers", f.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_analysis_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--taxonomy", f.taxonomy, "Taxonomy TSV used for labels");
    cmd->add_option("--top-k", f.top_k, "Ranking length")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--betweenness-norm", f.betweenness_norm, "total|component")
        ->capture_default_str()
        ->check(CLI::IsMember({"total", "component"}));
    cmd->add_option("--inter-split", f.inter_split, "full|half")
        ->capture_default_str()
        ->check(CLI::IsMember({"full", "half"}));
}

int run_fetch(const Flags& f) {
    FetchPlan plan;
    plan.year = f.year;
    if (f.month) plan.month = f.month;
    plan.batch_size = f.batch_size;
    plan.rate_limit = f.rate_limit;
    plan.query = f.query;
    if (const char* key = std::getenv("PUBMED_API_KEY")) plan.api_key = key;
    HttpTransport transport(f.base_url);
    SteadyClock clock;
    PubmedClient client(transport, plan, clock);
    const auto ids = client.search_ids();
    log_event("fetch", "search", {{"ids", ids.size()}});
    fs::path out(f.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream file(out);
    if (!file) throw DataError("cannot write " + f.out);
    const FetchStats stats = client.fetch_records(ids, file);
    log_event("fetch", "done", {{"written", stats.written}, {"skipped", stats.skipped}, {"requests", client.requests()},
                                {"path", f.out}});
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Topic co-occurrence network toolkit", "topicnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Flags f;

    auto* fetch = app.add_subcommand("fetch", "Fetch a corpus JSONL from PubMed E-utilities");
    fetch->add_option("--year", f.year, "Publication year")->required();
    fetch->add_option("--month", f.month, "Publication month (1-12)")->check(CLI::Range(1, 12));
    fetch->add_option("--out", f.out, "Corpus JSONL path")->required();
    fetch->add_option("--rate-limit", f.rate_limit, "Requests per second (default 3, or 10 with PUBMED_API_KEY)");
    fetch->add_option("--batch-size", f.batch_size, "Records per request")->capture_default_str()->check(CLI::Range(1, 10000));
    fetch->add_option("--base-url", f.base_url, "E-utilities root")->capture_default_str();
    fetch->add_option("--query", f.query, "Search term combined with the date window")->capture_default_str();

    auto* ingest = app.add_subcommand("ingest", "Stratify records and reduce them to topic bags");
    ingest->add_option("--corpus", f.corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
    ingest->add_option("--journals", f.journals, "Impactful journal list CSV")->required()->check(CLI::ExistingFile);
    ingest->add_option("--taxonomy", f.taxonomy, "Taxonomy TSV")->required()->check(CLI::ExistingFile);
    ingest->add_option("--year", f.year, "Analysis year")->required();
    ingest->add_option("--ni-month", f.ni_month, "Month of the subsampled NI stratum")
        ->capture_default_str()
        ->check(CLI::Range(1, 12));
    add_run_flags(ingest, f);

    auto* build = app.add_subcommand("build", "Build cosine-normalized core networks from topic bags");
    build->add_option("--bags", f.bags, "Topic bag JSONL files")->required()->check(CLI::ExistingFile);
    build->add_option("--taxonomy", f.taxonomy, "Taxonomy TSV")->required()->check(CLI::ExistingFile);
    build->add_option("--year", f.year, "Year recorded in provenance");
    build->add_option("--core-policy", f.core_policy, "intersection|per-network")
        ->capture_default_str()
        ->check(CLI::IsMember({"intersection", "per-network"}));
    auto* viz = build->add_option("--viz-threshold", f.viz_threshold, "Also export links with weight >= threshold");
    add_run_flags(build, f);

    auto* metrics = app.add_subcommand("metrics", "Global and node-level measures of a network");
    metrics->add_option("--network", f.network, "Network prefix (<prefix>.edges.csv / .nodes.csv)")->required();
    add_analysis_flags(metrics, f);
    add_run_flags(metrics, f);

    auto* roll = app.add_subcommand("rollup", "First-level category strengths of a network");
    roll->add_option("--network", f.network, "Network prefix")->required();
    add_analysis_flags(roll, f);
    add_run_flags(roll, f);

    auto* dif = app.add_subcommand("diff", "Difference network between two strata");
    dif->add_option("--network", f.network, "First network prefix")->required();
    dif->add_option("--network-b", f.network_b, "Second network prefix")->required();
    dif->add_option("--bins", f.bins, "Regression bins")->capture_default_str()->check(CLI::PositiveNumber);
    add_analysis_flags(dif, f);
    add_run_flags(dif, f);

    auto* fit = app.add_subcommand("fit", "Link- and node-strength distribution plot data");
    fit->add_option("--network", f.network, "Network prefix")->required();
    fit->add_option("--link-bins", f.link_bins, "Logarithmic link-strength bins")->capture_default_str();
    fit->add_option("--node-bins", f.node_bins, "Node-strength bins")->capture_default_str();
    add_run_flags(fit, f);

    auto* pipeline = app.add_subcommand("pipeline", "Run every stage for one year from a config file");
    pipeline->add_option("--config", f.config, "Flat key = value config")->required()->check(CLI::ExistingFile);
    auto* p_year = pipeline->add_option("--year", f.year);
    auto* p_month = pipeline->add_option("--ni-month", f.ni_month)->check(CLI::Range(1, 12));
    auto* p_tax = pipeline->add_option("--taxonomy", f.taxonomy);
    auto* p_journals = pipeline->add_option("--journals", f.journals);
    auto* p_corpus = pipeline->add_option("--corpus", f.corpus);
    auto* p_out = pipeline->add_option("--out", f.out);
    auto* p_seed = pipeline->add_option("--seed", f.seed);
    auto* p_workers = pipeline->add_option("--workers", f.workers)->check(CLI::PositiveNumber);
    auto* p_policy = pipeline->add_option("--core-policy", f.core_policy)
                         ->check(CLI::IsMember({"intersection", "per-network"}));
    auto* p_viz = pipeline->add_option("--viz-threshold", f.viz_threshold);
    auto* p_bins = pipeline->add_option("--bins", f.bins)->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Re-hash a report bundle against its manifest");
    verify->add_option("--out", f.out, "Bundle directory")->required()->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failed = &app;
        for (const auto* sub : app.get_subcommands()) failed = sub;
        err << failed->help();
        return 1;
    }

    try {
        if (*fetch) return run_fetch(f);
        if (*ingest) {
            run_ingest({f.corpus, f.journals, f.taxonomy, f.year, f.ni_month}, settings(f));
        } else if (*build) {
            BuildOptions b;
            for (const auto& p : f.bags) b.bags.emplace_back(p);
            b.taxonomy = f.taxonomy;
            b.policy = parse_core_policy(f.core_policy);
            if (viz->count()) b.viz_threshold = f.viz_threshold;
            b.year = f.year;
            run_build(b, settings(f));
        } else if (*metrics) {
            run_metrics(f.network, analysis(f), settings(f));
        } else if (*roll) {
            run_rollup(f.network, analysis(f), settings(f));
        } else if (*dif) {
            run_diff(f.network, f.network_b, analysis(f), settings(f));
        } else if (*fit) {
            run_fit(f.network, analysis(f), settings(f));
        } else if (*pipeline) {
            PipelineOptions p = PipelineOptions::from_config(Config::load(f.config));
            if (p_year->count()) p.ingest.year = f.year;
            if (p_month->count()) p.ingest.ni_month = f.ni_month;
            if (p_tax->count()) {
                p.ingest.taxonomy = f.taxonomy;
                p.analysis.taxonomy = fs::path(f.taxonomy);
            }
            if (p_journals->count()) p.ingest.journals = f.journals;
            if (p_corpus->count()) p.ingest.corpus = f.corpus;
            if (p_out->count()) p.run.out = f.out;
            if (p_seed->count()) p.run.seed = f.seed;
            if (p_workers->count()) p.run.workers = f.workers;
            if (p_policy->count()) p.policy = parse_core_policy(f.core_policy);
            if (p_viz->count()) p.viz_threshold = f.viz_threshold;
            if (p_bins->count()) p.analysis.bins = f.bins;
            run_pipeline(p);
        } else if (*verify) {
            const VerifyResult r = verify_bundle(f.out);
            for (const auto& p : r.mismatched) out << "MISMATCH " << p << '\n';
            for (const auto& p : r.missing) out << "MISSING " << p << '\n';
            for (const auto& p : r.unlisted) out << "UNLISTED " << p << '\n';
            if (!r.ok()) return 2;
            out << "OK\n";
        }
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NodeSetMismatch& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace topicnet::cli
