#include "topicnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topicnet/error.hpp"

namespace topicnet {

TopicNetwork::TopicNetwork(std::vector<NetworkNode> nodes, std::vector<Edge> edges, Provenance provenance)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), provenance_(std::move(provenance)) {
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i - 1].code < nodes_[i].code)) {
            throw DataError("network nodes not strictly sorted at " + nodes_[i].code.str());
        }
    }
    for (Edge& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v) throw DataError("self-link on " + nodes_.at(e.u).code.str());
        if (e.v >= nodes_.size()) throw DataError("link endpoint out of range");
        if (!(e.weight > 0.0 && e.weight <= 1.0) || !std::isfinite(e.weight)) {
            throw DataError("link weight outside (0, 1]: " + nodes_[e.u].code.str() + "-" +
                            nodes_[e.v].code.str());
        }
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
            throw DataError("duplicate link " + nodes_[edges_[i].u].code.str() + "-" +
                            nodes_[edges_[i].v].code.str());
        }
    }
}

std::optional<std::size_t> TopicNetwork::index_of(const TreeCode& code) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), code,
                               [](const NetworkNode& n, const TreeCode& c) { return n.code < c; });
    if (it == nodes_.end() || it->code != code) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

double TopicNetwork::weight(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v}, [](const Edge& e, const auto& key) {
        return std::tie(e.u, e.v) < std::tie(key.first, key.second);
    });
    return (it != edges_.end() && it->u == u && it->v == v) ? it->weight : 0.0;
}

double TopicNetwork::total_weight() const {
    double sum = 0.0;
    for (const Edge& e : edges_) sum += e.weight;
    return sum;
}

TopicNetwork TopicNetwork::threshold(double min_weight) const {
    std::vector<Edge> kept;
    std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(kept),
                 [&](const Edge& e) { return e.weight >= min_weight; });
    return TopicNetwork(nodes_, std::move(kept), provenance_);
}

TopicNetwork TopicNetwork::induced(const std::vector<TreeCode>& keep) const {
    std::vector<std::size_t> remap(nodes_.size(), SIZE_MAX);
    std::vector<TreeCode> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<NetworkNode> nodes;
    for (const TreeCode& c : sorted) {
        auto idx = index_of(c);
        if (!idx) throw DataError("node " + c.str() + " not in network " + provenance_.label);
        remap[*idx] = nodes.size();
        nodes.push_back(nodes_[*idx]);
    }
    std::vector<Edge> edges;
    for (const Edge& e : edges_) {
        if (remap[e.u] != SIZE_MAX && remap[e.v] != SIZE_MAX) edges.push_back({remap[e.u], remap[e.v], e.weight});
    }
    return TopicNetwork(std::move(nodes), std::move(edges), provenance_);
}

void TopicNetwork::relabel(const MeshTaxonomy& tax) {
    for (NetworkNode& n : nodes_) n.label = tax.label_or_code(n.code);
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g;
    g.adj.resize(n);
    for (const Edge& e : edges) {
        g.adj.at(e.u).push_back({e.v, e.weight});
        g.adj.at(e.v).push_back({e.u, e.weight});
    }
    for (auto& arcs : g.adj) {
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    }
    return g;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        for (const Arc& a : adj[u]) {
            if (u < a.to) out.push_back({u, a.to, a.weight});
        }
    }
    return out;
}

}  // namespace topicnet
