#include "topicnet/cooccurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "topicnet/error.hpp"

namespace topicnet {

long long CooccurrenceCounts::cooccurrence(const TreeCode& a, const TreeCode& b) const {
    auto key = a < b ? std::pair{a, b} : std::pair{b, a};
    auto it = pair.find(key);
    return it == pair.end() ? 0 : it->second;
}

CooccurrenceCounts& CooccurrenceCounts::operator+=(const CooccurrenceCounts& other) {
    for (const auto& [code, c] : other.diag) diag[code] += c;
    for (const auto& [key, c] : other.pair) pair[key] += c;
    papers += other.papers;
    return *this;
}

namespace {

void count_range(const std::vector<TopicBag>& bags, std::size_t begin, std::size_t end, CooccurrenceCounts& out) {
    for (std::size_t b = begin; b < end; ++b) {
        const auto& topics = bags[b].topics;
        ++out.papers;
        for (auto i = topics.begin(); i != topics.end(); ++i) {
            ++out.diag[*i];
            for (auto j = std::next(i); j != topics.end(); ++j) ++out.pair[{*i, *j}];
        }
    }
}

}  // namespace

CooccurrenceCounts count(const std::vector<TopicBag>& bags, unsigned workers) {
    workers = std::max(1u, workers);
    if (workers == 1 || bags.size() < 2 * workers) {
        CooccurrenceCounts out;
        count_range(bags, 0, bags.size(), out);
        return out;
    }
    std::vector<CooccurrenceCounts> shards(workers);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (bags.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t begin = std::min(bags.size(), w * chunk);
            std::size_t end = std::min(bags.size(), begin + chunk);
            pool.emplace_back([&, w, begin, end] { count_range(bags, begin, end, shards[w]); });
        }
    }
    CooccurrenceCounts out;
    for (const auto& shard : shards) out += shard;
    return out;
}

TopicNetwork normalize(const CooccurrenceCounts& counts, Provenance provenance) {
    std::vector<NetworkNode> nodes;
    nodes.reserve(counts.diag.size());
    for (const auto& [code, c] : counts.diag) {
        if (c > 0) nodes.push_back({code, code.str(), c});
    }
    auto index = [&](const TreeCode& code) -> std::size_t {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), code,
                                   [](const NetworkNode& n, const TreeCode& c) { return n.code < c; });
        if (it == nodes.end() || it->code != code) {
            throw DataError("co-occurrence references uncounted topic " + code.str());
        }
        return static_cast<std::size_t>(it - nodes.begin());
    };
    std::vector<Edge> edges;
    for (const auto& [key, cij] : counts.pair) {
        if (cij <= 0) continue;
        std::size_t i = index(key.first);
        std::size_t j = index(key.second);
        const long long cii = nodes[i].paper_count;
        const long long cjj = nodes[j].paper_count;
        if (cij > std::min(cii, cjj)) {
            throw DataError("inconsistent counts: c(" + key.first.str() + "," + key.second.str() + ")=" +
                            std::to_string(cij) + " exceeds a diagonal count");
        }
        double w = static_cast<double>(cij) / std::sqrt(static_cast<double>(cii) * static_cast<double>(cjj));
        edges.push_back({i, j, std::min(w, 1.0)});
    }
    if (provenance.paper_count == 0) provenance.paper_count = counts.papers;
    return TopicNetwork(std::move(nodes), std::move(edges), std::move(provenance));
}

CorePolicy parse_core_policy(std::string_view name) {
    if (name == "intersection") return CorePolicy::intersection;
    if (name == "per-network") return CorePolicy::per_network;
    throw std::invalid_argument("unknown core policy '" + std::string(name) + "'");
}

const char* to_string(CorePolicy policy) {
    return policy == CorePolicy::intersection ? "intersection" : "per-network";
}

namespace {

std::vector<TreeCode> linked_codes(const TopicNetwork& net) {
    std::vector<bool> linked(net.node_count(), false);
    for (const Edge& e : net.edges()) linked[e.u] = linked[e.v] = true;
    std::vector<TreeCode> out;
    for (std::size_t i = 0; i < net.node_count(); ++i) {
        if (linked[i]) out.push_back(net.code(i));
    }
    return out;
}

}  // namespace

std::vector<TopicNetwork> extract_core(const std::vector<TopicNetwork>& nets, CorePolicy policy) {
    if (nets.empty()) throw DataError("core extraction needs at least one network");
    std::vector<TopicNetwork> out;
    if (policy == CorePolicy::per_network) {
        for (const TopicNetwork& net : nets) {
            auto keep = linked_codes(net);
            if (keep.empty()) throw DataError("core of network '" + net.provenance().label + "' is empty");
            out.push_back(net.induced(keep));
        }
        return out;
    }
    std::vector<TreeCode> keep = linked_codes(nets.front());
    for (std::size_t k = 1; k < nets.size(); ++k) {
        std::vector<TreeCode> other = linked_codes(nets[k]);
        std::vector<TreeCode> both;
        std::set_intersection(keep.begin(), keep.end(), other.begin(), other.end(), std::back_inserter(both));
        keep = std::move(both);
    }
    if (keep.empty()) throw DataError("intersection core is empty");
    for (const TopicNetwork& net : nets) out.push_back(net.induced(keep));
    return out;
}

}  // namespace topicnet
