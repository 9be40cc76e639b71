#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "topicnet/corpus.hpp"
#include "topicnet/network.hpp"

namespace topicnet {

/// Article-level topic counts: `diag[i]` papers carrying i, `pair[{i, j}]`
/// papers carrying both (keys ordered so that i < j).
struct CooccurrenceCounts {
    std::map<TreeCode, long long> diag;
    std::map<std::pair<TreeCode, TreeCode>, long long> pair;
    long long papers = 0;

    std::size_t n_topics() const noexcept { return diag.size(); }
    /// Order-insensitive lookup; 0 when absent.
    long long cooccurrence(const TreeCode& a, const TreeCode& b) const;

    /// Commutative merge of shard counts.
    CooccurrenceCounts& operator+=(const CooccurrenceCounts& other);

    friend bool operator==(const CooccurrenceCounts&, const CooccurrenceCounts&) = default;
};

/// Counts over all bags. `workers > 1` shards the bags and merges the shard
/// maps; integer counts make the result independent of the shard layout.
CooccurrenceCounts count(const std::vector<TopicBag>& bags, unsigned workers = 1);

/// Cosine-normalized network: w_ij = c_ij / sqrt(c_ii * c_jj). Every topic with
/// c_ii > 0 becomes a node, linked or not. Throws DataError if some c_ij
/// exceeds min(c_ii, c_jj) or references an uncounted topic.
TopicNetwork normalize(const CooccurrenceCounts& counts, Provenance provenance = {});

enum class CorePolicy { intersection, per_network };

CorePolicy parse_core_policy(std::string_view name);
const char* to_string(CorePolicy policy);

/// Drops isolated nodes. `per_network`: each network loses its own degree-0
/// nodes. `intersection`: keeps nodes that are non-isolated in every input,
/// giving all outputs one node set. Throws DataError on an empty result or an
/// empty input list.
std::vector<TopicNetwork> extract_core(const std::vector<TopicNetwork>& nets,
                                       CorePolicy policy = CorePolicy::intersection);

}  // namespace topicnet
