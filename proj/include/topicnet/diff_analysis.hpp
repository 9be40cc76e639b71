#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "topicnet/community_rollup.hpp"
#include "topicnet/mesh_taxonomy.hpp"
#include "topicnet/network.hpp"

namespace topicnet {

/// Absolute-difference network |w_a - w_b| over the union of both link sets,
/// with a missing link read as 0 and exact-zero differences dropped. Both
/// inputs must share one node set; otherwise throws NodeSetMismatch.
TopicNetwork diff(const TopicNetwork& a, const TopicNetwork& b);

class NodeSetMismatch : public std::runtime_error {
public:
    NodeSetMismatch(std::vector<TreeCode> only_a, std::vector<TreeCode> only_b);
    const std::vector<TreeCode>& only_in_a() const noexcept { return only_a_; }
    const std::vector<TreeCode>& only_in_b() const noexcept { return only_b_; }

private:
    std::vector<TreeCode> only_a_;
    std::vector<TreeCode> only_b_;
};

struct Point {
    double x;
    double y;
};

/// Every ordered pair of distinct links sharing an endpoint, as
/// (x = weight of the first, y = weight of the second). Each unordered
/// adjacent pair contributes both orientations.
std::vector<Point> adjacent_link_points(const TopicNetwork& net);

/// Ordinary least squares of y on x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    /// Two-sided p-value of the slope t statistic (n - 2 degrees of freedom).
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Throws DataError on fewer than 2 points or when all x are identical.
LinearFit fit_line(const std::vector<Point>& points);

struct Bin {
    double center = 0.0;
    double mean_y = 0.0;
    double standard_error = 0.0;
    std::size_t count = 0;
};

/// Equal-width bins over [min x, max x] (top edge closed); empty bins omitted.
std::vector<Bin> bin_points(const std::vector<Point>& points, std::size_t n_bins);

struct AdjacencyRegression {
    LinearFit fit;
    std::size_t n_pairs = 0;
    std::vector<Bin> bins;
};

/// Regression of neighbouring-link weight on link weight. Throws DataError
/// with fewer than two adjacent link pairs or a degenerate x range.
AdjacencyRegression adjacency_regression(const TopicNetwork& net, std::size_t n_bins = 20);

struct RankedNode {
    TreeCode code;
    std::string label;
    TreeCode parent;
    std::string parent_label;
    double strength = 0.0;
};

/// Top-k nodes by strength, ties broken by code.
std::vector<RankedNode> rank_nodes(const TopicNetwork& net, const std::vector<double>& values, std::size_t k,
                                   const MeshTaxonomy* tax = nullptr);
std::vector<RankedNode> diff_node_ranking(const TopicNetwork& diff_net, std::size_t k,
                                          const MeshTaxonomy* tax = nullptr);

struct CommunityRankings {
    std::vector<RankedCategory> total;
    std::vector<RankedCategory> intra;
    std::vector<RankedCategory> inter;
};

CommunityRankings diff_community_ranking(const TopicNetwork& diff_net, std::size_t k,
                                         InterSplit split = InterSplit::full);

void write_points_csv(std::ostream& out, const std::vector<Point>& points);

}  // namespace topicnet
