#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "topicnet/network.hpp"

namespace topicnet {

// Distances throughout are sums of inverse weights, d(i, j) = min over paths of
// sum 1/w along the path. Unreachable nodes sit at +infinity.

/// s_i = sum_j w_ij.
std::vector<double> node_strengths(const Graph& g);

/// Single-source shortest paths with exact tie counting.
struct ShortestPaths {
    std::vector<double> dist;
    /// Number of distinct shortest paths from the source (exact integers).
    std::vector<double> sigma;
    /// Nodes in non-decreasing distance order (reachable ones only).
    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> preds;
};

/// Dijkstra on 1/w lengths. Throws DataError on a nonpositive weight.
ShortestPaths shortest_paths(const Graph& g, std::size_t source);

enum class BetweennessNorm {
    /// 2 / ((n - 1)(n - 2)) with n the total node count.
    total,
    /// Same factor with n the size of the node's connected component.
    component,
};

BetweennessNorm parse_betweenness_norm(std::string_view name);
const char* to_string(BetweennessNorm norm);

/// Brandes accumulation over all sources; per-source partials are merged in a
/// fixed order so results are identical for a given worker count.
std::vector<double> weighted_betweenness(const Graph& g, BetweennessNorm norm = BetweennessNorm::total,
                                         unsigned workers = 1);

struct PathLengthSummary {
    double aspl = 0.0;
    std::size_t reachable_pairs = 0;
    std::size_t unreachable_pairs = 0;
};

/// Mean distance over reachable unordered pairs. Throws DataError when no pair
/// is reachable.
PathLengthSummary average_shortest_path_length(const Graph& g, unsigned workers = 1);

/// Newman-Girvan modularity at resolution 1, with m the total link weight and
/// community sums counting each internal link twice. `assignment[i]` is the
/// community of node i. Throws DataError on a size mismatch or an edgeless graph.
double modularity(const Graph& g, const std::vector<std::size_t>& assignment);

struct CommunityPartition {
    /// Community ids are dense and numbered by first appearance in node order.
    std::vector<std::size_t> assignment;
    double quality = 0.0;
    std::uint64_t seed = 0;
    std::size_t community_count = 0;
    std::size_t levels = 0;
};

/// Multi-level Louvain with a seed-determined node visiting order that is
/// re-drawn for every local-moving pass. Throws DataError on an edgeless graph.
CommunityPartition louvain_partition(const Graph& g, std::uint64_t seed = 42);

/// Intensity-based local clustering (geometric mean of normalized triangle
/// weights). NaN for nodes with degree < 2.
std::vector<double> local_clustering(const Graph& g);

/// Mean of the local coefficients over nodes with degree >= 2. Throws
/// DataError when no node qualifies.
double weighted_gcc(const Graph& g);

struct GlobalMeasures {
    double avg_node_strength = 0.0;
    std::size_t link_count = 0;
    double modularity = 0.0;
    double weighted_gcc = 0.0;
    double aspl = 0.0;
    std::size_t unreachable_pairs = 0;
};

struct MetricsOptions {
    std::uint64_t seed = 42;
    unsigned workers = 1;
    BetweennessNorm norm = BetweennessNorm::total;
};

struct NetworkMeasures {
    GlobalMeasures global;
    std::vector<double> strength;
    std::vector<double> betweenness;
    CommunityPartition partition;
};

NetworkMeasures compute_measures(const TopicNetwork& net, const MetricsOptions& options = {});

}  // namespace topicnet
