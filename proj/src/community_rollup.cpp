#include "topicnet/community_rollup.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace topicnet {

InterSplit parse_inter_split(std::string_view name) {
    if (name == "full") return InterSplit::full;
    if (name == "half") return InterSplit::half;
    throw std::invalid_argument("unknown inter-category split '" + std::string(name) + "'");
}

const char* to_string(InterSplit split) { return split == InterSplit::full ? "full" : "half"; }

const char* to_string(RollupKey key) {
    switch (key) {
        case RollupKey::total: return "total";
        case RollupKey::intra: return "intra";
        case RollupKey::inter: return "inter";
    }
    return "?";
}

CommunityRollup rollup(const TopicNetwork& net, InterSplit split) {
    CommunityRollup out;
    std::vector<TreeCode> parent;
    parent.reserve(net.node_count());
    for (const NetworkNode& node : net.nodes()) {
        parent.push_back(first_level_parent(node.code));
        out.try_emplace(parent.back());
    }
    const double share = split == InterSplit::full ? 1.0 : 0.5;
    for (const Edge& e : net.edges()) {
        const TreeCode& a = parent[e.u];
        const TreeCode& b = parent[e.v];
        if (a == b) {
            out[a].intra += e.weight;
        } else {
            out[a].inter += share * e.weight;
            out[b].inter += share * e.weight;
        }
    }
    for (auto& [code, s] : out) s.total = s.intra + s.inter;
    return out;
}

std::vector<RankedCategory> rank(const CommunityRollup& rollup, RollupKey key, std::size_t k) {
    std::vector<RankedCategory> all;
    all.reserve(rollup.size());
    for (const auto& [code, s] : rollup) {
        const double v = key == RollupKey::total ? s.total : key == RollupKey::intra ? s.intra : s.inter;
        all.push_back({code, v});
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const RankedCategory& a, const RankedCategory& b) { return a.value > b.value; });
    if (all.size() > k) all.resize(k);
    return all;
}

}  // namespace topicnet
