#include "topicnet/graph_metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "topicnet/error.hpp"

namespace topicnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_weights(const Graph& g) {
    for (const auto& arcs : g.adj) {
        for (const Arc& a : arcs) {
            if (!(a.weight > 0.0)) throw DataError("nonpositive link weight " + std::to_string(a.weight));
        }
    }
}

constexpr std::size_t kSourceBlock = 16;

std::size_t source_blocks(std::size_t n) { return (n + kSourceBlock - 1) / kSourceBlock; }

/// Runs `body(begin, end, block)` over fixed blocks of kSourceBlock sources.
/// Block boundaries do not depend on `workers`, so reducing per-block
/// results in block order gives the same floating-point sums for any
/// worker count.
template <class Body>
void for_source_blocks(std::size_t n, unsigned workers, Body&& body) {
    const std::size_t blocks = source_blocks(n);
    auto run = [&](std::size_t b) { body(b * kSourceBlock, std::min(n, (b + 1) * kSourceBlock), b); };
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(blocks, 1)));
    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b) run(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next++; b < blocks; b = next++) run(b);
        });
    }
}

std::vector<std::size_t> component_sizes(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> comp(n, SIZE_MAX);
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != SIZE_MAX) continue;
        std::size_t id = sizes.size();
        sizes.push_back(0);
        std::vector<std::size_t> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            ++sizes[id];
            for (const Arc& a : g.adj[u]) {
                if (comp[a.to] == SIZE_MAX) {
                    comp[a.to] = id;
                    stack.push_back(a.to);
                }
            }
        }
    }
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sizes[comp[i]];
    return out;
}

}  // namespace

std::vector<double> node_strengths(const Graph& g) {
    std::vector<double> s(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const Arc& a : g.adj[i]) s[i] += a.weight;
    }
    return s;
}

ShortestPaths shortest_paths(const Graph& g, std::size_t source) {
    const std::size_t n = g.size();
    ShortestPaths sp;
    sp.dist.assign(n, kInf);
    sp.sigma.assign(n, 0.0);
    sp.preds.assign(n, {});
    std::vector<bool> settled(n, false);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    sp.dist.at(source) = 0.0;
    sp.sigma[source] = 1.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (settled[u] || d > sp.dist[u]) continue;
        settled[u] = true;
        sp.order.push_back(u);
        for (const Arc& a : g.adj[u]) {
            if (!(a.weight > 0.0)) throw DataError("nonpositive link weight " + std::to_string(a.weight));
            const double candidate = d + 1.0 / a.weight;
            if (candidate < sp.dist[a.to]) {
                sp.dist[a.to] = candidate;
                sp.sigma[a.to] = sp.sigma[u];
                sp.preds[a.to].assign(1, u);
                queue.emplace(candidate, a.to);
            } else if (candidate == sp.dist[a.to] && !settled[a.to]) {
                sp.sigma[a.to] += sp.sigma[u];
                sp.preds[a.to].push_back(u);
            }
        }
    }
    return sp;
}

BetweennessNorm parse_betweenness_norm(std::string_view name) {
    if (name == "total") return BetweennessNorm::total;
    if (name == "component") return BetweennessNorm::component;
    throw std::invalid_argument("unknown betweenness normalization '" + std::string(name) + "'");
}

const char* to_string(BetweennessNorm norm) { return norm == BetweennessNorm::total ? "total" : "component"; }

std::vector<double> weighted_betweenness(const Graph& g, BetweennessNorm norm, unsigned workers) {
    check_weights(g);
    const std::size_t n = g.size();
    std::vector<std::vector<double>> partial(source_blocks(n), std::vector<double>(n, 0.0));
    for_source_blocks(n, workers, [&](std::size_t begin, std::size_t end, std::size_t block) {
        std::vector<double>& acc = partial[block];
        std::vector<double> delta(n);
        for (std::size_t s = begin; s < end; ++s) {
            ShortestPaths sp = shortest_paths(g, s);
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
                const std::size_t w = *it;
                for (std::size_t v : sp.preds[w]) delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
                if (w != s) acc[w] += delta[w];
            }
        }
    });
    std::vector<double> b(n, 0.0);
    for (const auto& acc : partial) {
        for (std::size_t i = 0; i < n; ++i) b[i] += acc[i];
    }
    // Every unordered pair is seen from both ends; halving it and applying
    // 2 / ((n - 1)(n - 2)) leaves a single 1 / ((n - 1)(n - 2)) factor.
    const std::vector<std::size_t> sizes =
        norm == BetweennessNorm::component ? component_sizes(g) : std::vector<std::size_t>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(sizes[i]);
        b[i] = sizes[i] < 3 ? 0.0 : b[i] / ((k - 1.0) * (k - 2.0));
    }
    return b;
}

PathLengthSummary average_shortest_path_length(const Graph& g, unsigned workers) {
    check_weights(g);
    const std::size_t n = g.size();
    std::vector<double> sums(source_blocks(n), 0.0);
    std::vector<std::size_t> reachable(source_blocks(n), 0);
    for_source_blocks(n, workers, [&](std::size_t begin, std::size_t end, std::size_t slot) {
        for (std::size_t s = begin; s < end; ++s) {
            ShortestPaths sp = shortest_paths(g, s);
            for (std::size_t t = s + 1; t < n; ++t) {
                if (sp.dist[t] < kInf) {
                    sums[slot] += sp.dist[t];
                    ++reachable[slot];
                }
            }
        }
    });
    PathLengthSummary out;
    double total = 0.0;
    for (std::size_t b = 0; b < sums.size(); ++b) {
        total += sums[b];
        out.reachable_pairs += reachable[b];
    }
    const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    out.unreachable_pairs = pairs - out.reachable_pairs;
    if (out.reachable_pairs == 0) throw DataError("no reachable node pairs for average shortest path length");
    out.aspl = total / static_cast<double>(out.reachable_pairs);
    return out;
}

double modularity(const Graph& g, const std::vector<std::size_t>& assignment) {
    const std::size_t n = g.size();
    if (assignment.size() != n) {
        throw DataError("assignment covers " + std::to_string(assignment.size()) + " of " + std::to_string(n) +
                        " nodes");
    }
    const std::size_t k = n == 0 ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<double> internal(k, 0.0);
    std::vector<double> total(k, 0.0);
    double two_m = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        for (const Arc& a : g.adj[u]) {
            two_m += a.weight;
            total[assignment[u]] += a.weight;
            if (assignment[u] == assignment[a.to]) internal[assignment[u]] += a.weight;
        }
    }
    if (!(two_m > 0.0)) throw DataError("modularity is undefined on a graph without links");
    double q = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        const double frac = total[c] / two_m;
        q += internal[c] / two_m - frac * frac;
    }
    return q;
}

namespace {

/// Graph at one Louvain level. `loop[i]` holds the weight of links internal to
/// the super-node counted twice, so that `degree[i]` = loop + outgoing arcs.
struct LevelGraph {
    std::vector<std::vector<Arc>> adj;
    std::vector<double> loop;
    std::vector<double> degree;
};

std::size_t bounded(std::mt19937_64& rng, std::size_t bound) {
    // Rejection sampling keeps the draw unbiased and platform independent.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

double level_quality(const LevelGraph& g, const std::vector<std::size_t>& comm, double two_m) {
    std::vector<double> internal(g.adj.size(), 0.0);
    std::vector<double> total(g.adj.size(), 0.0);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        total[comm[u]] += g.degree[u];
        internal[comm[u]] += g.loop[u];
        for (const Arc& a : g.adj[u]) {
            if (comm[a.to] == comm[u]) internal[comm[u]] += a.weight;
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < g.adj.size(); ++c) {
        q += internal[c] / two_m - (total[c] / two_m) * (total[c] / two_m);
    }
    return q;
}

/// Local moving phase. Returns true when any node changed community.
bool move_nodes(const LevelGraph& g, std::vector<std::size_t>& comm, double two_m, std::mt19937_64& rng) {
    const std::size_t n = g.adj.size();
    std::vector<double> total(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) total[comm[i]] += g.degree[i];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> link_to(n, 0.0);
    std::vector<std::size_t> touched;
    bool any_move = false;
    double quality = level_quality(g, comm, two_m);
    constexpr std::size_t kMaxPasses = 1000;
    for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
        shuffle(order, rng);
        std::size_t moves = 0;
        for (std::size_t i : order) {
            const std::size_t home = comm[i];
            touched.clear();
            touched.push_back(home);
            for (const Arc& a : g.adj[i]) {
                const std::size_t c = comm[a.to];
                if (link_to[c] == 0.0 && c != home) touched.push_back(c);
                link_to[c] += a.weight;
            }
            total[home] -= g.degree[i];
            const double ki = g.degree[i];
            std::size_t best = home;
            double best_gain = link_to[home] - total[home] * ki / two_m;
            for (std::size_t c : touched) {
                const double gain = link_to[c] - total[c] * ki / two_m;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            total[best] += ki;
            comm[i] = best;
            if (best != home) ++moves;
            for (std::size_t c : touched) link_to[c] = 0.0;
        }
        if (moves == 0) break;
        const double next = level_quality(g, comm, two_m);
        any_move = true;
        if (next - quality < 1e-12) break;
        quality = next;
    }
    return any_move;
}

std::size_t renumber(std::vector<std::size_t>& comm) {
    std::vector<std::size_t> id(comm.size(), SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t& c : comm) {
        if (id[c] == SIZE_MAX) id[c] = next++;
        c = id[c];
    }
    return next;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::size_t>& comm, std::size_t k) {
    LevelGraph out;
    out.adj.resize(k);
    out.loop.assign(k, 0.0);
    out.degree.assign(k, 0.0);
    std::vector<std::map<std::size_t, double>> links(k);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        const std::size_t cu = comm[u];
        out.loop[cu] += g.loop[u];
        out.degree[cu] += g.degree[u];
        for (const Arc& a : g.adj[u]) {
            const std::size_t cv = comm[a.to];
            if (cu == cv) {
                out.loop[cu] += a.weight;
            } else {
                links[cu][cv] += a.weight;
            }
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (const auto& [d, w] : links[c]) out.adj[c].push_back({d, w});
    }
    return out;
}

}  // namespace

CommunityPartition louvain_partition(const Graph& g, std::uint64_t seed) {
    const std::size_t n = g.size();
    LevelGraph level;
    level.adj = g.adj;
    level.loop.assign(n, 0.0);
    level.degree = node_strengths(g);
    const double two_m = std::accumulate(level.degree.begin(), level.degree.end(), 0.0);
    if (!(two_m > 0.0)) throw DataError("Louvain needs at least one link");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> flat(n);
    std::iota(flat.begin(), flat.end(), 0);
    CommunityPartition out;
    out.seed = seed;
    while (true) {
        std::vector<std::size_t> comm(level.adj.size());
        std::iota(comm.begin(), comm.end(), 0);
        const bool moved = move_nodes(level, comm, two_m, rng);
        const std::size_t k = renumber(comm);
        if (!moved || k == level.adj.size()) break;
        ++out.levels;
        for (std::size_t& c : flat) c = comm[c];
        level = aggregate(level, comm, k);
    }
    out.community_count = renumber(flat);
    out.assignment = std::move(flat);
    out.quality = modularity(g, out.assignment);
    if (out.quality < 0.0) {
        out.assignment.assign(n, 0);
        out.community_count = n == 0 ? 0 : 1;
        out.quality = modularity(g, out.assignment);
    }
    return out;
}

std::vector<double> local_clustering(const Graph& g) {
    const std::size_t n = g.size();
    double max_w = 0.0;
    for (const auto& arcs : g.adj) {
        for (const Arc& a : arcs) max_w = std::max(max_w, a.weight);
    }
    std::vector<double> c(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> row(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nbrs = g.adj[i];
        const std::size_t k = nbrs.size();
        if (k < 2) continue;
        double sum = 0.0;
        for (const Arc& j : nbrs) {
            for (const Arc& h : g.adj[j.to]) row[h.to] = h.weight;
            for (const Arc& h : nbrs) {
                if (h.to != j.to && row[h.to] > 0.0) {
                    sum += std::cbrt((j.weight / max_w) * (row[h.to] / max_w) * (h.weight / max_w));
                }
            }
            for (const Arc& h : g.adj[j.to]) row[h.to] = 0.0;
        }
        c[i] = sum / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return c;
}

double weighted_gcc(const Graph& g) {
    const std::vector<double> local = local_clustering(g);
    double sum = 0.0;
    std::size_t eligible = 0;
    for (double c : local) {
        if (!std::isnan(c)) {
            sum += c;
            ++eligible;
        }
    }
    if (eligible == 0) throw DataError("clustering needs a node of degree >= 2");
    return sum / static_cast<double>(eligible);
}

NetworkMeasures compute_measures(const TopicNetwork& net, const MetricsOptions& options) {
    const Graph g = Graph::from_network(net);
    NetworkMeasures m;
    m.strength = node_strengths(g);
    m.betweenness = weighted_betweenness(g, options.norm, options.workers);
    m.partition = louvain_partition(g, options.seed);
    const PathLengthSummary paths = average_shortest_path_length(g, options.workers);
    m.global.avg_node_strength =
        g.size() == 0 ? 0.0 : std::accumulate(m.strength.begin(), m.strength.end(), 0.0) / static_cast<double>(g.size());
    m.global.link_count = net.edge_count();
    m.global.modularity = m.partition.quality;
    m.global.weighted_gcc = weighted_gcc(g);
    m.global.aspl = paths.aspl;
    m.global.unreachable_pairs = paths.unreachable_pairs;
    return m;
}

}  // namespace topicnet
