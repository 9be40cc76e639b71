#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topicnet/mesh_taxonomy.hpp"

namespace topicnet {

struct NetworkNode {
    TreeCode code;
    std::string label;
    /// c_ii, the number of papers carrying this topic (0 when not tracked).
    long long paper_count = 0;

    friend bool operator==(const NetworkNode&, const NetworkNode&) = default;
};

/// Undirected link between node indices `u < v`.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Provenance {
    std::string label;
    int year = 0;
    long long paper_count = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Undirected weighted graph over level-2 topic codes.
///
/// Invariants, checked on construction: nodes sorted by code and unique, no
/// self-links, no duplicate links, every weight in (0, 1]. Links are kept
/// sorted by endpoint pair.
class TopicNetwork {
public:
    TopicNetwork() = default;
    TopicNetwork(std::vector<NetworkNode> nodes, std::vector<Edge> edges, Provenance provenance = {});

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<NetworkNode>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Provenance& provenance() const noexcept { return provenance_; }
    void set_provenance(Provenance p) { provenance_ = std::move(p); }

    const TreeCode& code(std::size_t i) const { return nodes_.at(i).code; }
    std::optional<std::size_t> index_of(const TreeCode& code) const;
    /// 0 when the pair is not linked.
    double weight(std::size_t u, std::size_t v) const;
    double total_weight() const;

    /// Same nodes, links with weight >= threshold only.
    TopicNetwork threshold(double min_weight) const;
    /// Restricts to the given codes (which must all be present).
    TopicNetwork induced(const std::vector<TreeCode>& keep) const;

    /// Node labels looked up from a taxonomy (codes without a label keep the code).
    void relabel(const MeshTaxonomy& tax);

    friend bool operator==(const TopicNetwork&, const TopicNetwork&) = default;

private:
    std::vector<NetworkNode> nodes_;
    std::vector<Edge> edges_;
    Provenance provenance_;
};

/// Adjacency-list view used by the metric kernels.
struct Arc {
    std::size_t to;
    double weight;
};

struct Graph {
    std::vector<std::vector<Arc>> adj;

    std::size_t size() const noexcept { return adj.size(); }
    std::size_t degree(std::size_t i) const { return adj[i].size(); }

    static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);
    static Graph from_network(const TopicNetwork& net) { return from_edges(net.node_count(), net.edges()); }
    std::vector<Edge> edges() const;
};

}  // namespace topicnet
