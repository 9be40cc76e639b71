#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "topicnet/network.hpp"

namespace topicnet {

/// Connection strength of one first-level category.
struct CategoryStrength {
    double total = 0.0;
    double intra = 0.0;
    double inter = 0.0;
};

/// How a link between two categories is credited.
enum class InterSplit {
    /// Each endpoint category receives the full weight.
    full,
    /// Each endpoint category receives half the weight.
    half,
};

InterSplit parse_inter_split(std::string_view name);
const char* to_string(InterSplit split);

/// Categories keyed by their one-segment code, ordered lexicographically.
using CommunityRollup = std::map<TreeCode, CategoryStrength>;

/// Aggregates link weights to first-level parents. A link inside category c
/// adds its weight once to c's intra strength; a link across categories adds to
/// the inter strength of both. Every node's category appears, even if its
/// strengths are zero. total = intra + inter for each category.
CommunityRollup rollup(const TopicNetwork& net, InterSplit split = InterSplit::full);

enum class RollupKey { total, intra, inter };

const char* to_string(RollupKey key);

struct RankedCategory {
    TreeCode code;
    double value = 0.0;
};

/// Top-k categories by descending value, ties broken by code.
std::vector<RankedCategory> rank(const CommunityRollup& rollup, RollupKey key, std::size_t k);

}  // namespace topicnet
