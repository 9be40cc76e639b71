#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "topicnet/diff_analysis.hpp"
#include "topicnet/error.hpp"

using namespace topicnet;

namespace {

std::vector<NetworkNode> nodes3() {
    return {{TreeCode::parse("C01.100"), "a", 1}, {TreeCode::parse("C01.200"), "b", 1},
            {TreeCode::parse("C04.588"), "c", 1}};
}

}  // namespace

TEST_CASE("diff takes absolute differences and reads missing links as zero") {
    const TopicNetwork a(nodes3(), {{0, 1, 0.5}, {1, 2, 0.25}}, {"I", 1999, 0});
    const TopicNetwork b(nodes3(), {{0, 1, 0.75}, {0, 2, 0.125}, {1, 2, 0.25}}, {"NI", 1999, 0});
    const auto d = diff(a, b);
    CHECK(d.edge_count() == 2);
    CHECK(d.weight(0, 1) == 0.25);
    CHECK(d.weight(0, 2) == 0.125);
    CHECK(d.weight(1, 2) == 0.0);
    CHECK(d == diff(b, a));
}

TEST_CASE("diff is symmetric and vanishes on itself") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = gen::random_network(rng, 12, 0.4);
        const auto b = gen::random_network(rng, 12, 0.4);
        CHECK(diff(a, b) == diff(b, a));
        CHECK(diff(a, a).edge_count() == 0);
    }
}

TEST_CASE("diff rejects different node sets") {
    auto other = nodes3();
    other[2].code = TreeCode::parse("C05.100");
    const TopicNetwork a(nodes3(), {});
    const TopicNetwork b(other, {});
    try {
        diff(a, b);
        FAIL("expected NodeSetMismatch");
    } catch (const NodeSetMismatch& e) {
        CHECK(e.only_in_a() == std::vector<TreeCode>{TreeCode::parse("C04.588")});
        CHECK(e.only_in_b() == std::vector<TreeCode>{TreeCode::parse("C05.100")});
    }
}

TEST_CASE("adjacent link points are ordered pairs sharing an endpoint") {
    // Path 0-1-2: links (0,1) and (1,2) share node 1 and give two points.
    const TopicNetwork net(nodes3(), {{0, 1, 0.5}, {1, 2, 0.25}});
    const auto pts = adjacent_link_points(net);
    REQUIRE(pts.size() == 2);
    CHECK(((pts[0].x == 0.5 && pts[0].y == 0.25) || (pts[1].x == 0.5 && pts[1].y == 0.25)));
    // Triangle: each of 3 links has 2 neighbours.
    const TopicNetwork tri(nodes3(), {{0, 1, 0.5}, {1, 2, 0.25}, {0, 2, 1.0}});
    CHECK(adjacent_link_points(tri).size() == 6);
}

TEST_CASE("fit recovers an exact line") {
    std::vector<Point> pts;
    for (int i = 0; i < 50; ++i) pts.push_back({i * 0.01, 0.08 * (i * 0.01) + 0.02});
    const auto fit = fit_line(pts);
    CHECK(fit.slope == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(std::abs(fit.r_squared - 1.0) <= 1e-9);
    CHECK(fit.p_value < 1e-12);
    CHECK(fit.n == 50);
}

TEST_CASE("fit agrees with the closed form on noisy data") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::uniform_real_distribution<double> x(0.0, 1.0);
    std::vector<Point> pts;
    for (int i = 0; i < 500; ++i) {
        const double xi = x(rng);
        pts.push_back({xi, 0.3 * xi + noise(rng)});
    }
    const auto fit = fit_line(pts);
    const auto ref = oracle::ols(pts);
    CHECK(fit.slope == doctest::Approx(ref.slope).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(ref.intercept).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(ref.r_squared).epsilon(1e-9));
    CHECK(fit.p_value < 1e-6);
}

TEST_CASE("p-value of an uncorrelated sample") {
    // Symmetric about x = 0.5 with zero slope: t = 0, two-sided p = 1.
    const std::vector<Point> pts{{0.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}, {1.0, 0.0}};
    const auto fit = fit_line(pts);
    CHECK(fit.slope == 0.0);
    CHECK(fit.p_value == doctest::Approx(1.0));
}

TEST_CASE("degenerate fits") {
    CHECK_THROWS_AS(fit_line({{1.0, 2.0}}), DataError);
    CHECK_THROWS_AS(fit_line({{1.0, 2.0}, {1.0, 3.0}, {1.0, 4.0}}), DataError);
    CHECK(std::isnan(fit_line({{0.0, 0.0}, {1.0, 1.0}}).p_value));
}

TEST_CASE("equal-width bins with sample standard error") {
    const std::vector<Point> pts{{0.0, 1.0}, {0.1, 3.0}, {1.0, 5.0}, {0.9, 5.0}};
    const auto bins = bin_points(pts, 2);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].center == doctest::Approx(0.25));
    CHECK(bins[0].mean_y == doctest::Approx(2.0));
    CHECK(bins[0].count == 2);
    // Sample SD of {1, 3} is sqrt(2); SE = sqrt(2) / sqrt(2) = 1.
    CHECK(bins[0].standard_error == doctest::Approx(1.0));
    CHECK(bins[1].standard_error == 0.0);
}

TEST_CASE("node and community rankings of a diff network") {
    const TopicNetwork d(nodes3(), {{0, 1, 0.5}, {1, 2, 0.25}});
    const auto nodes = diff_node_ranking(d, 2);
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].code.str() == "C01.200");
    CHECK(nodes[0].strength == 0.75);
    CHECK(nodes[0].parent.str() == "C01");
    CHECK(nodes[1].code.str() == "C01.100");
    const auto comm = diff_community_ranking(d, 5);
    CHECK(comm.total[0].code.str() == "C01");
    CHECK(comm.total[0].value == 0.75);
    CHECK(comm.intra[0].value == 0.5);
}
