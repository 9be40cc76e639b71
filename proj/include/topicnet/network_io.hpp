#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "topicnet/network.hpp"

namespace topicnet {

// Edge CSV `source,target,weight`, node CSV `code,label,c_ii`, and GraphML with
// a `weight` edge attribute. Nodes are written in code order and links by
// sorted endpoint pair, with weights at 17 significant digits.

/// Links with weight < min_weight are omitted when a threshold is given.
void write_edge_csv(std::ostream& out, const TopicNetwork& net, std::optional<double> min_weight = {});
void write_node_csv(std::ostream& out, const TopicNetwork& net);
void write_graphml(std::ostream& out, const TopicNetwork& net, std::optional<double> min_weight = {});

/// Nodes from the node CSV; links must reference known nodes.
TopicNetwork read_network_csv(std::istream& edges, std::istream& nodes, Provenance provenance = {});
TopicNetwork read_graphml(std::istream& in);

/// `<prefix>.edges.csv` + `<prefix>.nodes.csv`.
struct NetworkFiles {
    std::filesystem::path edges;
    std::filesystem::path nodes;

    static NetworkFiles from_prefix(const std::filesystem::path& prefix);
};

TopicNetwork load_network(const std::filesystem::path& prefix);
TopicNetwork load_graphml(const std::filesystem::path& path);

}  // namespace topicnet
