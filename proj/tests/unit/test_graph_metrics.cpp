#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "topicnet/error.hpp"
#include "topicnet/graph_metrics.hpp"

using namespace topicnet;

namespace {

Graph path3(double w) { return Graph::from_edges(3, {{0, 1, w}, {1, 2, w}}); }

Graph star(std::size_t leaves) {
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
    return Graph::from_edges(leaves + 1, e);
}

}  // namespace

TEST_CASE("strength sums incident weights") {
    const Graph g = Graph::from_edges(3, {{0, 1, 0.5}, {1, 2, 0.25}});
    const auto s = node_strengths(g);
    CHECK(s == std::vector<double>{0.5, 0.75, 0.25});
}

TEST_CASE("star centre carries every shortest path") {
    const auto b = weighted_betweenness(star(4));
    CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] == 0.0);
}

TEST_CASE("path lengths use inverse weights") {
    const auto sp = shortest_paths(path3(0.5), 0);
    CHECK(sp.dist == std::vector<double>{0.0, 2.0, 4.0});
    const auto summary = average_shortest_path_length(path3(0.5));
    CHECK(summary.aspl == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(summary.reachable_pairs == 3);
    CHECK(summary.unreachable_pairs == 0);
}

TEST_CASE("ASPL skips unreachable pairs and reports them") {
    const Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {2, 3, 0.5}});
    const auto summary = average_shortest_path_length(g);
    CHECK(summary.reachable_pairs == 2);
    CHECK(summary.unreachable_pairs == 4);
    CHECK(summary.aspl == doctest::Approx(1.5));
}

TEST_CASE("tied shortest paths split betweenness") {
    // Square 0-1-2-3-0: two equal routes between opposite corners.
    const Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
    const auto sp = shortest_paths(g, 0);
    CHECK(sp.sigma[2] == 2.0);
    const auto b = weighted_betweenness(g);
    for (double x : b) CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("component normalization rescales by component size") {
    // A 3-path plus an isolated edge: total uses n = 5, component uses n = 3.
    const Graph g = Graph::from_edges(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}});
    CHECK(weighted_betweenness(g, BetweennessNorm::total)[1] == doctest::Approx(2.0 / 12.0));
    CHECK(weighted_betweenness(g, BetweennessNorm::component)[1] == doctest::Approx(1.0));
    CHECK(parse_betweenness_norm("component") == BetweennessNorm::component);
    CHECK_THROWS(parse_betweenness_norm("bogus"));
}

TEST_CASE("betweenness is independent of worker count") {
    std::mt19937_64 rng(7);
    const auto edges = gen::random_edges(rng, 40, 0.2, gen::Weights::continuous);
    const Graph g = Graph::from_edges(40, edges);
    CHECK(weighted_betweenness(g, BetweennessNorm::total, 1) == weighted_betweenness(g, BetweennessNorm::total, 3));
    CHECK(average_shortest_path_length(g, 1).aspl == average_shortest_path_length(g, 4).aspl);
}

TEST_CASE("random small graphs agree with brute force") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + trial % 6;
        const auto weights = trial % 2 ? gen::Weights::dyadic : gen::Weights::continuous;
        const auto edges = gen::random_edges(rng, n, 0.5, weights);
        const Graph g = Graph::from_edges(n, edges);
        const auto w = oracle::weight_matrix(n, edges);
        const auto fw = oracle::floyd_warshall(w);
        for (std::size_t s = 0; s < n; ++s) {
            const auto sp = shortest_paths(g, s);
            for (std::size_t t = 0; t < n; ++t) {
                if (std::isinf(fw[s][t])) {
                    CHECK(std::isinf(sp.dist[t]));
                } else {
                    CHECK(sp.dist[t] == doctest::Approx(fw[s][t]).epsilon(1e-12));
                }
                if (weights == gen::Weights::dyadic && t != s) {
                    CHECK(sp.sigma[t] == oracle::enumerate_paths(w, s, t).count);
                }
            }
        }
        const auto b = weighted_betweenness(g);
        const auto ob = oracle::betweenness(w);
        for (std::size_t i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(ob[i]).epsilon(1e-9));
        const auto s = node_strengths(g);
        const auto os = oracle::strengths(w);
        for (std::size_t i = 0; i < n; ++i) CHECK(s[i] == doctest::Approx(os[i]).epsilon(1e-12));
    }
}

TEST_CASE("modularity of two disjoint triangles") {
    const Graph g = Graph::from_edges(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
    CHECK(modularity(g, {0, 0, 0, 1, 1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(modularity(g, {0, 0, 0, 0, 0, 0}) == doctest::Approx(0.0));
}

TEST_CASE("modularity matches the matrix form") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> label(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 8;
        const auto edges = gen::random_edges(rng, n, 0.5, gen::Weights::continuous);
        if (edges.empty()) continue;
        std::vector<std::size_t> a(n);
        for (auto& x : a) x = label(rng);
        const Graph g = Graph::from_edges(n, edges);
        CHECK(modularity(g, a) == doctest::Approx(oracle::modularity(oracle::weight_matrix(n, edges), a)).epsilon(1e-9));
    }
}

TEST_CASE("louvain recovers planted blocks and is seed-deterministic") {
    std::mt19937_64 rng(11);
    std::vector<std::size_t> block;
    const auto edges = gen::two_block(rng, 10, 0.01, block);
    const Graph g = Graph::from_edges(20, edges);
    const auto p = louvain_partition(g, 3);
    CHECK(p.community_count == 2);
    for (std::size_t i = 0; i < 20; ++i) CHECK((p.assignment[i] == p.assignment[0]) == (block[i] == block[0]));
    CHECK(p.quality == doctest::Approx(modularity(g, p.assignment)).epsilon(1e-12));
    const auto again = louvain_partition(g, 3);
    CHECK(again.assignment == p.assignment);
    CHECK(again.quality == p.quality);
}

TEST_CASE("louvain rejects an edgeless graph") {
    CHECK_THROWS_AS(louvain_partition(Graph::from_edges(3, {}), 1), DataError);
}

TEST_CASE("louvain quality is never negative") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto edges = gen::random_edges(rng, 12, 0.3, gen::Weights::continuous);
        if (edges.empty()) continue;
        CHECK(louvain_partition(Graph::from_edges(12, edges), trial).quality >= 0.0);
    }
}

TEST_CASE("triangle intensity clustering") {
    const Graph g = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 0.125}});
    for (double c : local_clustering(g)) CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(weighted_gcc(g) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("clustering is NaN below degree two and GCC averages the rest") {
    const Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}});
    const auto c = local_clustering(g);
    CHECK(std::isnan(c[3]));
    CHECK(c[2] == doctest::Approx(1.0 / 3.0));
    CHECK(weighted_gcc(g) == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));
    CHECK_THROWS_AS(weighted_gcc(Graph::from_edges(2, {{0, 1, 1.0}})), DataError);
}

TEST_CASE("GCC matches brute force and is scale invariant") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto edges = gen::random_edges(rng, 8, 0.6, gen::Weights::continuous);
        if (edges.size() < 3) continue;
        const Graph g = Graph::from_edges(8, edges);
        bool has_wedge = false;
        for (std::size_t i = 0; i < 8; ++i) has_wedge |= g.degree(i) >= 2;
        if (!has_wedge) continue;
        const double gcc = weighted_gcc(g);
        CHECK(gcc == doctest::Approx(oracle::gcc(oracle::weight_matrix(8, edges))).epsilon(1e-9));
        auto halved = edges;
        for (auto& e : halved) e.weight *= 0.5;
        CHECK(weighted_gcc(Graph::from_edges(8, halved)) == gcc);
    }
}
