#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "topicnet/dist_fit.hpp"
#include "topicnet/error.hpp"

using namespace topicnet;

TEST_CASE("log-binned histogram integrates to one") {
    std::mt19937_64 rng(1);
    const auto xs = oracle::sample_power_law(rng, 5000, 2.0, 0.01);
    const auto h = log_binned_histogram(xs, 30);
    CHECK(h.bins() == 30);
    CHECK(std::accumulate(h.count.begin(), h.count.end(), std::size_t{0}) == xs.size());
    double mass = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        mass += h.density[b] * h.width(b);
        CHECK(h.edges[b + 1] > h.edges[b]);
        if (b > 0) CHECK(h.edges[b + 1] / h.edges[b] == doctest::Approx(h.edges[1] / h.edges[0]).epsilon(1e-9));
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("histogram input errors") {
    CHECK_THROWS_AS(log_binned_histogram({}, 10), DataError);
    CHECK_THROWS_AS(log_binned_histogram({0.0, 1.0}, 10), DataError);
    CHECK_THROWS_AS(log_binned_histogram({1.0, 2.0}, 1), DataError);
    const auto flat = linear_histogram({2.0, 2.0, 2.0}, 4);
    CHECK(flat.count[0] == 3);
}

TEST_CASE("bin lookup is closed on both outer edges") {
    const auto h = linear_histogram({0.0, 1.0, 2.0, 4.0}, 4);
    CHECK(h.bin_of(0.0) == 0);
    CHECK(h.bin_of(4.0) == 3);
    CHECK(h.bin_of(1.0) == 1);
    CHECK(h.bin_of(4.5) == SIZE_MAX);
}

TEST_CASE("power-law MLE closed form") {
    // alpha = 1 + n / sum ln(x / x_min)
    const std::vector<double> xs{1, 2, 4, 8, 16, 1, 2, 4, 8, 16};
    const double s = 2 * (std::log(2.0) + std::log(4.0) + std::log(8.0) + std::log(16.0));
    const auto fit = fit_power_law_tail(xs, 1.0);
    CHECK(fit.alpha == doctest::Approx(1.0 + 10.0 / s).epsilon(1e-12));
    CHECK(fit.n_tail == 10);
    CHECK_THROWS_AS(fit_power_law_tail({1, 2, 3}, 1.0), DataError);
    CHECK_THROWS_AS(fit_power_law_tail(xs, 0.0), DataError);
}

TEST_CASE("power-law recovery on synthetic data") {
    std::mt19937_64 rng(19);
    const auto xs = oracle::sample_power_law(rng, 20000, presets::kLinkAlpha, presets::kLinkXMin);
    CHECK(std::abs(fit_power_law_tail(xs, presets::kLinkXMin).alpha - 1.9) < 0.05);
}

TEST_CASE("truncated-exponential recovery") {
    std::mt19937_64 rng(21);
    for (double lambda : {0.2, 0.6, 2.0}) {
        const auto xs = oracle::sample_truncated_exponential(rng, 20000, lambda, 1.0, 6.0);
        const auto fit = fit_exponential(xs, 1.0, 6.0);
        CAPTURE(lambda);
        CHECK_FALSE(fit.at_boundary);
        CHECK(fit.lambda == doctest::Approx(lambda).epsilon(0.05));
    }
}

TEST_CASE("uniform data sits at the exponential boundary") {
    std::vector<double> xs;
    for (int i = 0; i <= 100; ++i) xs.push_back(1.0 + 5.0 * i / 100.0);
    const auto fit = fit_exponential(xs, 1.0, 6.0);
    CHECK(fit.at_boundary);
    CHECK(fit.lambda == 0.0);
    CHECK_THROWS_AS(fit_exponential(xs, 6.0, 1.0), DataError);
    CHECK_THROWS_AS(fit_exponential({1.5, 2.0}, 1.0, 6.0), DataError);
}

TEST_CASE("overlay curves anchor at the histogram") {
    std::mt19937_64 rng(2);
    const auto xs = oracle::sample_power_law(rng, 5000, 1.9, 0.05);
    const auto h = log_binned_histogram(xs, 20);
    const PowerLawFit fit{1.9, 0.1, 0};
    const auto grid = geometric_grid(0.1, 10.0, 5);
    CHECK(grid.front() == 0.1);
    CHECK(grid.back() == 10.0);
    const auto s = overlay_curve(fit, h, grid);
    CHECK(s.y[0] == h.density[h.bin_of(0.1)]);
    // Slope on log-log axes equals -alpha.
    CHECK(std::log(s.y[4] / s.y[0]) / std::log(s.x[4] / s.x[0]) == doctest::Approx(-1.9));

    const auto lin = linear_grid(1.0, 6.0, 6);
    CHECK(lin[1] == doctest::Approx(2.0));
    const ExponentialFit efit{0.6, 1.0, 6.0, 0, false};
    const auto hist = linear_histogram(lin, 5);
    const auto e = overlay_curve(efit, hist, lin);
    CHECK(e.y[5] / e.y[0] == doctest::Approx(std::exp(-3.0)));
}

TEST_CASE("log-binned density falls with slope -alpha on log-log axes") {
    std::mt19937_64 rng(12);
    const auto xs = oracle::sample_power_law(rng, 200000, 2.5, 1.0);
    const auto h = log_binned_histogram(xs, 30);
    std::vector<topicnet::Point> pts;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        // Sparse tail bins are dominated by shot noise.
        if (h.count[b] < 50) continue;
        pts.push_back({std::log(std::sqrt(h.edges[b] * h.edges[b + 1])), std::log(h.density[b])});
    }
    REQUIRE(pts.size() >= 5);
    CHECK(oracle::ols(pts).slope == doctest::Approx(-2.5).epsilon(0.05));
}
