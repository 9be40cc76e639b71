#include "topicnet/stages.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "topicnet/corpus.hpp"
#include "topicnet/diff_analysis.hpp"
#include "topicnet/dist_fit.hpp"
#include "topicnet/error.hpp"
#include "topicnet/log.hpp"
#include "topicnet/network_io.hpp"
#include "topicnet/report.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// "bags/I.bags.jsonl" -> "I", "networks/NI-June" -> "NI-June".
std::string label_of(const fs::path& p) {
    std::string name = p.filename().string();
    for (std::string_view suffix : {".bags.jsonl", ".jsonl"}) {
        if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            return name.substr(0, name.size() - suffix.size());
        }
    }
    return name;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string display(const std::string& code, double v) { return code + "(" + format_2dp(v) + ")"; }

void finish(const RunSettings& run, std::string_view stage, const json& inputs) {
    const Manifest m = update_manifest(run.out, inputs, run.seed);
    log_event(stage, "manifest", {{"out", run.out.generic_string()}, {"artifacts", m.artifacts.size()}});
}

void write_json(const RunSettings& run, const fs::path& rel, const json& doc) {
    write_artifact(run.out, rel, doc.dump(2) + "\n");
    log_event("export", "wrote", {{"path", rel.generic_string()}});
}

std::optional<MeshTaxonomy> maybe_taxonomy(const AnalysisOptions& opt) {
    if (!opt.taxonomy) return std::nullopt;
    return load_taxonomy(*opt.taxonomy);
}

std::string node_ranking_csv(const TopicNetwork& net, const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                             std::size_t k, const MeshTaxonomy* tax) {
    std::ostringstream out;
    out << "measure,rank,code,label,parent,value,display\n";
    for (const auto& [measure, values] : columns) {
        std::size_t rank_no = 0;
        for (const RankedNode& r : rank_nodes(net, values, k, tax)) {
            out << measure << ',' << ++rank_no << ',' << r.code << ',' << csv_field(r.label) << ',' << r.parent << ','
                << format_exact(r.strength) << ',' << display(r.code.str(), r.strength) << '\n';
        }
    }
    return out.str();
}

std::string rollup_csv(const CommunityRollup& r, const MeshTaxonomy* tax) {
    std::ostringstream out;
    out << "category,label,s_total,s_intra,s_inter\n";
    for (const auto& [code, s] : r) {
        out << code << ',' << csv_field(tax ? tax->label_or_code(code) : code.str()) << ',' << format_exact(s.total)
            << ',' << format_exact(s.intra) << ',' << format_exact(s.inter) << '\n';
    }
    return out.str();
}

std::string rollup_ranking_csv(const CommunityRollup& r, std::size_t k, const MeshTaxonomy* tax) {
    std::ostringstream out;
    out << "key,rank,category,label,value,display\n";
    for (RollupKey key : {RollupKey::total, RollupKey::intra, RollupKey::inter}) {
        std::size_t rank_no = 0;
        for (const RankedCategory& c : rank(r, key, k)) {
            out << to_string(key) << ',' << ++rank_no << ',' << c.code << ','
                << csv_field(tax ? tax->label_or_code(c.code) : c.code.str()) << ',' << format_exact(c.value) << ','
                << display(c.code.str(), c.value) << '\n';
        }
    }
    return out.str();
}

void write_network_files(const RunSettings& run, const fs::path& rel_prefix, const TopicNetwork& net) {
    std::ostringstream edges, nodes, graphml;
    write_edge_csv(edges, net);
    write_node_csv(nodes, net);
    write_graphml(graphml, net);
    write_artifact(run.out, rel_prefix.string() + ".edges.csv", edges.str());
    write_artifact(run.out, rel_prefix.string() + ".nodes.csv", nodes.str());
    write_artifact(run.out, rel_prefix.string() + ".graphml", graphml.str());
    log_event("export", "network", {{"prefix", rel_prefix.generic_string()},
                                    {"nodes", net.node_count()},
                                    {"links", net.edge_count()}});
}

std::string histogram_csv(const Histogram& h) {
    std::ostringstream out;
    out << "bin_lo,bin_hi,density,count\n";
    for (std::size_t b = 0; b < h.bins(); ++b) {
        out << format_exact(h.edges[b]) << ',' << format_exact(h.edges[b + 1]) << ',' << format_exact(h.density[b])
            << ',' << h.count[b] << '\n';
    }
    return out.str();
}

std::string series_csv(const Series& s) {
    std::ostringstream out;
    out << "x,y\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) out << format_exact(s.x[i]) << ',' << format_exact(s.y[i]) << '\n';
    return out.str();
}

}  // namespace

std::string month_stratum_label(int month) {
    static constexpr std::array<const char*, 12> names{"January", "February", "March",     "April",
                                                       "May",     "June",     "July",      "August",
                                                       "September", "October", "November", "December"};
    if (month < 1 || month > 12) throw std::invalid_argument("month must be in [1, 12]");
    return std::string("NI-") + names[static_cast<std::size_t>(month - 1)];
}

std::vector<fs::path> run_ingest(const IngestOptions& opt, const RunSettings& run) {
    const MeshTaxonomy tax = load_taxonomy(opt.taxonomy);
    const JournalList journals = load_journal_list(opt.journals, opt.year);
    const ParseReport parsed = parse_records(opt.corpus, [](std::size_t line, const std::string& msg) {
        log_event("ingest", "skipped-line", {{"line", line}, {"reason", msg}});
    });
    StratumConfig cfg{opt.year, journals, opt.ni_month};
    const Strata strata = stratify(parsed.records, cfg);

    const std::array<std::pair<std::string, const std::vector<ArticleRecord>*>, 3> corpora{{
        {"I", &strata.impactful},
        {"NI", &strata.non_impactful},
        {month_stratum_label(opt.ni_month), &strata.non_impactful_month},
    }};
    json report = {{"year", opt.year},
                   {"ni_month", opt.ni_month},
                   {"records", parsed.records.size()},
                   {"skipped_lines", parsed.skipped},
                   {"rejected_wrong_year", strata.rejected_wrong_year},
                   {"unlisted_journal_articles", strata.unlisted_journal},
                   {"no_journal_key", strata.no_journal_key},
                   {"strata", json::array()}};
    std::vector<fs::path> outputs;
    for (const auto& [label, corpus] : corpora) {
        const BagReport bags = to_topic_bags(*corpus, tax);
        std::ostringstream body;
        write_bags(body, bags.bags);
        const fs::path rel = fs::path("bags") / (label + ".bags.jsonl");
        write_artifact(run.out, rel, body.str());
        outputs.push_back(run.out / rel);
        report["strata"].push_back({{"label", label},
                                    {"articles", corpus->size()},
                                    {"bags", bags.bags.size()},
                                    {"dropped_no_topic", bags.dropped_empty},
                                    {"unknown_descriptors", bags.unknown_descriptors}});
        log_event("ingest", "stratum", {{"label", label}, {"articles", corpus->size()}, {"bags", bags.bags.size()},
                                        {"path", rel.generic_string()}});
    }
    write_json(run, "ingest_report.json", report);
    finish(run, "ingest",
           {{"corpus", provenance_path(opt.corpus, run.out)},
            {"journals", provenance_path(opt.journals, run.out)},
            {"taxonomy", provenance_path(opt.taxonomy, run.out)},
            {"year", opt.year},
            {"ni_month", opt.ni_month}});
    return outputs;
}

std::vector<fs::path> run_build(const BuildOptions& opt, const RunSettings& run) {
    if (opt.bags.empty()) throw UsageError("build needs at least one topic bag file");
    const MeshTaxonomy tax = load_taxonomy(opt.taxonomy);
    std::vector<TopicNetwork> full;
    json report = {{"core_policy", to_string(opt.policy)}, {"networks", json::array()}};
    for (const fs::path& bag_file : opt.bags) {
        const std::vector<TopicBag> bags = read_bags(bag_file);
        const std::string label = label_of(bag_file);
        TopicNetwork net = normalize(count(bags, run.workers), Provenance{label, opt.year, 0});
        net.relabel(tax);
        log_event("build", "network", {{"label", label}, {"papers", bags.size()}, {"observed_nodes", net.node_count()},
                                       {"links", net.edge_count()}});
        full.push_back(std::move(net));
    }
    const std::vector<TopicNetwork> core = extract_core(full, opt.policy);
    std::vector<fs::path> prefixes;
    json bag_inputs = json::array();
    for (std::size_t i = 0; i < core.size(); ++i) {
        const std::string& label = full[i].provenance().label;
        const fs::path rel = fs::path("networks") / label;
        write_network_files(run, rel, core[i]);
        if (opt.viz_threshold) {
            std::ostringstream viz;
            write_edge_csv(viz, core[i], opt.viz_threshold);
            write_artifact(run.out, (fs::path("viz") / (label + ".edges.csv")).string(), viz.str());
        }
        prefixes.push_back(run.out / rel);
        bag_inputs.push_back(provenance_path(opt.bags[i], run.out));
        report["networks"].push_back({{"label", label},
                                      {"papers", full[i].provenance().paper_count},
                                      {"observed_nodes", full[i].node_count()},
                                      {"observed_links", full[i].edge_count()},
                                      {"core_nodes", core[i].node_count()},
                                      {"core_links", core[i].edge_count()}});
    }
    write_json(run, "build_report.json", report);
    finish(run, "build",
           {{"taxonomy", provenance_path(opt.taxonomy, run.out)},
            {"bags", bag_inputs},
            {"core_policy", to_string(opt.policy)},
            {"viz_threshold", opt.viz_threshold ? json(*opt.viz_threshold) : json(nullptr)},
            {"workers", run.workers}});
    return prefixes;
}

void run_metrics(const fs::path& network, const AnalysisOptions& opt, const RunSettings& run) {
    const auto tax = maybe_taxonomy(opt);
    const TopicNetwork net = load_network(network);
    const std::string label = label_of(network);
    const NetworkMeasures m = compute_measures(net, {run.seed, run.workers, opt.norm});

    json nodes = json::array();
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        nodes.push_back({{"code", net.code(i).str()},
                         {"label", net.nodes()[i].label},
                         {"strength", m.strength[i]},
                         {"betweenness", m.betweenness[i]},
                         {"community", m.partition.assignment[i]}});
    }
    const json doc = {
        {"network", label},
        {"provenance",
         {{"network", label}, {"nodes", net.node_count()}, {"links", net.edge_count()}, {"seed", run.seed},
          {"workers", run.workers}, {"betweenness_normalization", to_string(opt.norm)}}},
        {"avg_node_strength", m.global.avg_node_strength},
        {"link_count", m.global.link_count},
        {"modularity", m.global.modularity},
        {"weighted_gcc", m.global.weighted_gcc},
        {"aspl", number_or_null(m.global.aspl)},
        {"unreachable_pairs", m.global.unreachable_pairs},
        {"communities", m.partition.community_count},
        {"nodes", nodes},
    };
    write_json(run, fs::path("metrics") / (label + ".measures.json"), doc);
    write_artifact(run.out, (fs::path("metrics") / (label + ".node_ranking.csv")).string(),
                   node_ranking_csv(net, {{"strength", m.strength}, {"betweenness", m.betweenness}}, opt.top_k,
                                    tax ? &*tax : nullptr));
    log_event("metrics", "measures", {{"network", label}, {"avg_node_strength", m.global.avg_node_strength},
                                      {"modularity", m.global.modularity}, {"links", m.global.link_count}});
    finish(run, "metrics", {{"betweenness_norm", to_string(opt.norm)}, {"top_k", opt.top_k}, {"workers", run.workers}});
}

void run_rollup(const fs::path& network, const AnalysisOptions& opt, const RunSettings& run) {
    const auto tax = maybe_taxonomy(opt);
    const TopicNetwork net = load_network(network);
    const std::string label = label_of(network);
    const CommunityRollup r = rollup(net, opt.split);
    write_artifact(run.out, (fs::path("rollup") / (label + ".rollup.csv")).string(), rollup_csv(r, tax ? &*tax : nullptr));
    write_artifact(run.out, (fs::path("rollup") / (label + ".rollup_ranking.csv")).string(),
                   rollup_ranking_csv(r, opt.top_k, tax ? &*tax : nullptr));
    log_event("rollup", "categories", {{"network", label}, {"categories", r.size()}});
    finish(run, "rollup", {{"inter_split", to_string(opt.split)}, {"top_k", opt.top_k}});
}

void run_diff(const fs::path& a, const fs::path& b, const AnalysisOptions& opt, const RunSettings& run) {
    const auto tax = maybe_taxonomy(opt);
    const TopicNetwork na = load_network(a);
    const TopicNetwork nb = load_network(b);
    const TopicNetwork d = diff(na, nb);
    const std::string label = label_of(a) + "_vs_" + label_of(b);
    const fs::path base = fs::path("diff") / label;
    write_network_files(run, base, d);

    const std::vector<Point> points = adjacent_link_points(d);
    std::ostringstream pts;
    write_points_csv(pts, points);
    write_artifact(run.out, base.string() + ".points.csv", pts.str());
    try {
        AdjacencyRegression reg;
        reg.fit = fit_line(points);
        reg.n_pairs = points.size();
        reg.bins = bin_points(points, opt.bins);
        json bins = json::array();
        std::ostringstream bins_csv;
        bins_csv << "center,mean_y,standard_error,count\n";
        for (const Bin& bin : reg.bins) {
            bins.push_back({{"center", bin.center}, {"mean_y", bin.mean_y}, {"standard_error", bin.standard_error},
                            {"count", bin.count}});
            bins_csv << format_exact(bin.center) << ',' << format_exact(bin.mean_y) << ','
                     << format_exact(bin.standard_error) << ',' << bin.count << '\n';
        }
        write_json(run, base.string() + ".regression.json",
                   {{"slope", reg.fit.slope},
                    {"intercept", reg.fit.intercept},
                    {"r_squared", reg.fit.r_squared},
                    {"p_value", number_or_null(reg.fit.p_value)},
                    {"n_pairs", reg.n_pairs},
                    {"bins", bins}});
        write_artifact(run.out, base.string() + ".bins.csv", bins_csv.str());
    } catch (const DataError& e) {
        log_event("diff", "regression-skipped", {{"reason", e.what()}});
    }

    const MeshTaxonomy* taxp = tax ? &*tax : nullptr;
    std::ostringstream ranking;
    ranking << "rank,code,label,parent,parent_label,strength,display\n";
    std::size_t rank_no = 0;
    for (const RankedNode& r : diff_node_ranking(d, opt.top_k, taxp)) {
        ranking << ++rank_no << ',' << r.code << ',' << csv_field(r.label) << ',' << r.parent << ','
                << csv_field(r.parent_label) << ',' << format_exact(r.strength) << ','
                << display(r.code.str(), r.strength) << '\n';
    }
    write_artifact(run.out, base.string() + ".node_ranking.csv", ranking.str());
    const CommunityRollup r = rollup(d, opt.split);
    write_artifact(run.out, base.string() + ".rollup.csv", rollup_csv(r, taxp));
    write_artifact(run.out, base.string() + ".rollup_ranking.csv", rollup_ranking_csv(r, opt.top_k, taxp));
    log_event("diff", "network", {{"label", label}, {"links", d.edge_count()}, {"points", points.size()}});
    finish(run, "diff", {{"bins", opt.bins}, {"inter_split", to_string(opt.split)}, {"top_k", opt.top_k}});
}

void run_fit(const fs::path& network, const AnalysisOptions& opt, const RunSettings& run) {
    const TopicNetwork net = load_network(network);
    const std::string label = label_of(network);
    const fs::path base = fs::path("fits") / label;

    std::vector<double> link_weights;
    for (const Edge& e : net.edges()) link_weights.push_back(e.weight);
    if (!link_weights.empty()) {
        const Histogram h = log_binned_histogram(link_weights, opt.link_bins);
        write_artifact(run.out, base.string() + ".link_strength.hist.csv", histogram_csv(h));
        const PowerLawFit preset{presets::kLinkAlpha, presets::kLinkXMin, 0};
        const Series overlay =
            overlay_curve(preset, h, geometric_grid(presets::kLinkXMin, std::max(presets::kLinkXMin, h.edges.back()), 50));
        write_artifact(run.out, base.string() + ".link_strength.overlay.csv", series_csv(overlay));
        try {
            const PowerLawFit fit = fit_power_law_tail(link_weights, presets::kLinkXMin);
            write_json(run, base.string() + ".link_strength.fit.json",
                       {{"preset", {{"alpha", presets::kLinkAlpha}, {"x_min", presets::kLinkXMin}}},
                        {"fit", {{"alpha", fit.alpha}, {"x_min", fit.x_min}, {"n_tail", fit.n_tail}}}});
        } catch (const DataError& e) {
            log_event("fit", "power-law-skipped", {{"network", label}, {"reason", e.what()}});
        }
    }

    const std::vector<double> strengths = node_strengths(Graph::from_network(net));
    if (!strengths.empty()) {
        const Histogram h = linear_histogram(strengths, opt.node_bins);
        write_artifact(run.out, base.string() + ".node_strength.hist.csv", histogram_csv(h));
        ExponentialFit preset;
        preset.lambda = presets::kNodeLambda;
        preset.lo = presets::kNodeLo;
        preset.hi = presets::kNodeHi;
        const Series overlay = overlay_curve(preset, h, linear_grid(presets::kNodeLo, presets::kNodeHi, 51));
        write_artifact(run.out, base.string() + ".node_strength.overlay.csv", series_csv(overlay));
        try {
            const ExponentialFit fit = fit_exponential(strengths, presets::kNodeLo, presets::kNodeHi);
            write_json(run, base.string() + ".node_strength.fit.json",
                       {{"preset", {{"lambda", presets::kNodeLambda}, {"lo", presets::kNodeLo}, {"hi", presets::kNodeHi}}},
                        {"fit",
                         {{"lambda", fit.lambda}, {"lo", fit.lo}, {"hi", fit.hi}, {"n", fit.n},
                          {"at_boundary", fit.at_boundary}}}});
        } catch (const DataError& e) {
            log_event("fit", "exponential-skipped", {{"network", label}, {"reason", e.what()}});
        }
    }
    finish(run, "fit", {{"link_bins", opt.link_bins}, {"node_bins", opt.node_bins}});
}

PipelineOptions PipelineOptions::from_config(const Config& cfg) {
    PipelineOptions opt;
    auto path = [&](const std::string& key) -> fs::path {
        auto v = cfg.get(key);
        if (!v || v->empty()) throw UsageError("config is missing '" + key + "'");
        fs::path p(*v);
        return p.is_relative() ? cfg.base_dir() / p : p;
    };
    auto integer = [&](const std::string& key, long long fallback) -> long long {
        auto v = cfg.get(key);
        if (!v) return fallback;
        try {
            return std::stoll(*v);
        } catch (const std::exception&) {
            throw UsageError("config key '" + key + "' must be an integer");
        }
    };
    opt.ingest.corpus = path("corpus");
    opt.ingest.journals = path("journals");
    opt.ingest.taxonomy = path("taxonomy");
    opt.ingest.year = static_cast<int>(integer("year", 0));
    opt.ingest.ni_month = static_cast<int>(integer("ni_month", 6));
    opt.run.out = path("out");
    opt.run.seed = static_cast<std::uint64_t>(integer("seed", 42));
    opt.run.workers = static_cast<unsigned>(integer("workers", 1));
    opt.policy = parse_core_policy(cfg.get_or("core_policy", "intersection"));
    if (auto v = cfg.get("viz_threshold")) {
        opt.viz_threshold = (*v == "none" || v->empty()) ? std::nullopt : std::optional<double>(std::stod(*v));
    }
    opt.analysis.taxonomy = opt.ingest.taxonomy;
    opt.analysis.bins = static_cast<std::size_t>(integer("bins", 20));
    opt.analysis.link_bins = static_cast<std::size_t>(integer("link_bins", 30));
    opt.analysis.node_bins = static_cast<std::size_t>(integer("node_bins", 20));
    opt.analysis.top_k = static_cast<std::size_t>(integer("top_k", 5));
    opt.analysis.norm = parse_betweenness_norm(cfg.get_or("betweenness_norm", "total"));
    opt.analysis.split = parse_inter_split(cfg.get_or("inter_split", "full"));
    return opt;
}

void run_pipeline(const PipelineOptions& opt) {
    if (opt.ingest.year <= 0) throw UsageError("pipeline needs a positive year");
    log_event("pipeline", "start", {{"year", opt.ingest.year}, {"out", opt.run.out.generic_string()}});
    const std::vector<fs::path> bags = run_ingest(opt.ingest, opt.run);
    BuildOptions build{bags, opt.ingest.taxonomy, opt.policy, opt.viz_threshold, opt.ingest.year};
    const std::vector<fs::path> networks = run_build(build, opt.run);
    for (const fs::path& net : networks) {
        run_metrics(net, opt.analysis, opt.run);
        run_rollup(net, opt.analysis, opt.run);
        run_fit(net, opt.analysis, opt.run);
    }
    run_diff(networks.front(), networks.back(), opt.analysis, opt.run);
    log_event("pipeline", "done", {{"out", opt.run.out.generic_string()}});
}

}  // namespace topicnet
