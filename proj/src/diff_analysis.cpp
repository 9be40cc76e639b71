#include "topicnet/diff_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>

#include "topicnet/error.hpp"
#include "topicnet/graph_metrics.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

namespace {

std::string describe(const std::vector<TreeCode>& only_a, const std::vector<TreeCode>& only_b) {
    std::string msg = "node sets differ; only in first: [";
    for (std::size_t i = 0; i < only_a.size(); ++i) msg += (i ? " " : "") + only_a[i].str();
    msg += "]; only in second: [";
    for (std::size_t i = 0; i < only_b.size(); ++i) msg += (i ? " " : "") + only_b[i].str();
    return msg + "]";
}

}  // namespace

NodeSetMismatch::NodeSetMismatch(std::vector<TreeCode> only_a, std::vector<TreeCode> only_b)
    : std::runtime_error(describe(only_a, only_b)), only_a_(std::move(only_a)), only_b_(std::move(only_b)) {}

TopicNetwork diff(const TopicNetwork& a, const TopicNetwork& b) {
    std::vector<TreeCode> codes_a, codes_b, only_a, only_b;
    for (const auto& n : a.nodes()) codes_a.push_back(n.code);
    for (const auto& n : b.nodes()) codes_b.push_back(n.code);
    std::set_difference(codes_a.begin(), codes_a.end(), codes_b.begin(), codes_b.end(), std::back_inserter(only_a));
    std::set_difference(codes_b.begin(), codes_b.end(), codes_a.begin(), codes_a.end(), std::back_inserter(only_b));
    if (!only_a.empty() || !only_b.empty()) throw NodeSetMismatch(std::move(only_a), std::move(only_b));

    // Both edge lists are sorted by endpoint pair: merge them.
    std::vector<Edge> edges;
    const auto& ea = a.edges();
    const auto& eb = b.edges();
    std::size_t i = 0, j = 0;
    auto key = [](const Edge& e) { return std::pair{e.u, e.v}; };
    auto emit = [&](std::size_t u, std::size_t v, double w) {
        if (w != 0.0) edges.push_back({u, v, w});
    };
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && key(ea[i]) < key(eb[j]))) {
            emit(ea[i].u, ea[i].v, ea[i].weight);
            ++i;
        } else if (i == ea.size() || key(eb[j]) < key(ea[i])) {
            emit(eb[j].u, eb[j].v, eb[j].weight);
            ++j;
        } else {
            emit(ea[i].u, ea[i].v, std::fabs(ea[i].weight - eb[j].weight));
            ++i;
            ++j;
        }
    }

    std::vector<NetworkNode> nodes = a.nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        nodes[k].paper_count = 0;
        if (nodes[k].label == nodes[k].code.str()) nodes[k].label = b.nodes()[k].label;
    }
    const auto& la = a.provenance().label;
    const auto& lb = b.provenance().label;
    Provenance prov;
    prov.label = "diff(" + std::min(la, lb) + "," + std::max(la, lb) + ")";
    prov.year = a.provenance().year == b.provenance().year ? a.provenance().year : 0;
    return TopicNetwork(std::move(nodes), std::move(edges), std::move(prov));
}

std::vector<Point> adjacent_link_points(const TopicNetwork& net) {
    const Graph g = Graph::from_network(net);
    std::vector<Point> points;
    std::size_t total = 0;
    for (const auto& arcs : g.adj) total += arcs.size() * (arcs.size() > 0 ? arcs.size() - 1 : 0);
    points.reserve(total);
    // For each link e = (u, v), every other link at u and at v is a neighbour.
    for (const Edge& e : net.edges()) {
        for (std::size_t end : {e.u, e.v}) {
            const std::size_t other = end == e.u ? e.v : e.u;
            for (const Arc& a : g.adj[end]) {
                if (a.to != other) points.push_back({e.weight, a.weight});
            }
        }
    }
    return points;
}

LinearFit fit_line(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw DataError("regression needs at least 2 points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const Point& p : points) {
        mean_x += p.x;
        mean_y += p.y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Point& p : points) {
        const double dx = p.x - mean_x;
        const double dy = p.y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DataError("regression slope undefined: all x values are identical");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    if (n < 3) {
        fit.p_value = std::numeric_limits<double>::quiet_NaN();
    } else if (ss_res == 0.0) {
        fit.p_value = fit.slope == 0.0 ? 1.0 : 0.0;
    } else {
        const double df = static_cast<double>(n - 2);
        const double se = std::sqrt(ss_res / df / sxx);
        const double t = std::fabs(fit.slope / se);
        boost::math::students_t dist(df);
        fit.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    }
    return fit;
}

std::vector<Bin> bin_points(const std::vector<Point>& points, std::size_t n_bins) {
    if (points.empty() || n_bins == 0) return {};
    auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end(),
                                              [](const Point& a, const Point& b) { return a.x < b.x; });
    const double lo = lo_it->x;
    const double hi = hi_it->x;
    const double width = (hi - lo) / static_cast<double>(n_bins);
    std::vector<double> sum(n_bins, 0.0);
    std::vector<std::size_t> count(n_bins, 0);
    std::vector<std::size_t> index(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        std::size_t b = width > 0.0 ? static_cast<std::size_t>((points[k].x - lo) / width) : 0;
        b = std::min(b, n_bins - 1);
        index[k] = b;
        sum[b] += points[k].y;
        ++count[b];
    }
    std::vector<double> mean(n_bins, 0.0), sq(n_bins, 0.0);
    for (std::size_t b = 0; b < n_bins; ++b) {
        if (count[b]) mean[b] = sum[b] / static_cast<double>(count[b]);
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double d = points[k].y - mean[index[k]];
        sq[index[k]] += d * d;
    }
    std::vector<Bin> bins;
    for (std::size_t b = 0; b < n_bins; ++b) {
        if (!count[b]) continue;
        Bin bin;
        bin.center = lo + (static_cast<double>(b) + 0.5) * width;
        bin.mean_y = mean[b];
        bin.count = count[b];
        if (count[b] > 1) {
            const double c = static_cast<double>(count[b]);
            bin.standard_error = std::sqrt(sq[b] / (c - 1.0)) / std::sqrt(c);
        }
        bins.push_back(bin);
    }
    return bins;
}

AdjacencyRegression adjacency_regression(const TopicNetwork& net, std::size_t n_bins) {
    const std::vector<Point> points = adjacent_link_points(net);
    if (points.size() < 4) throw DataError("adjacency regression needs at least two adjacent link pairs");
    AdjacencyRegression out;
    out.fit = fit_line(points);
    out.n_pairs = points.size();
    out.bins = bin_points(points, n_bins);
    return out;
}

std::vector<RankedNode> rank_nodes(const TopicNetwork& net, const std::vector<double>& values, std::size_t k,
                                   const MeshTaxonomy* tax) {
    std::vector<std::size_t> order(net.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values.at(a) > values.at(b); });
    if (order.size() > k) order.resize(k);
    std::vector<RankedNode> out;
    for (std::size_t i : order) {
        const NetworkNode& node = net.nodes()[i];
        RankedNode r;
        r.code = node.code;
        r.parent = first_level_parent(node.code);
        r.label = tax ? tax->label_or_code(node.code) : node.label;
        r.parent_label = tax ? tax->label_or_code(r.parent) : r.parent.str();
        r.strength = values[i];
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RankedNode> diff_node_ranking(const TopicNetwork& diff_net, std::size_t k, const MeshTaxonomy* tax) {
    if (diff_net.edge_count() == 0) return {};
    return rank_nodes(diff_net, node_strengths(Graph::from_network(diff_net)), k, tax);
}

CommunityRankings diff_community_ranking(const TopicNetwork& diff_net, std::size_t k, InterSplit split) {
    const CommunityRollup r = rollup(diff_net, split);
    return {rank(r, RollupKey::total, k), rank(r, RollupKey::intra, k), rank(r, RollupKey::inter, k)};
}

void write_points_csv(std::ostream& out, const std::vector<Point>& points) {
    out << "x,y\n";
    for (const Point& p : points) out << format_exact(p.x) << ',' << format_exact(p.y) << '\n';
}

}  // namespace topicnet
