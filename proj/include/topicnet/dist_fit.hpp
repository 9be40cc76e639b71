#pragma once

#include <cstddef>
#include <vector>

namespace topicnet {

/// Histogram with per-bin raw counts and densities count / (width * total).
struct Histogram {
    std::vector<double> edges;  // size = bins + 1, strictly increasing
    std::vector<double> density;
    std::vector<std::size_t> count;

    std::size_t bins() const noexcept { return count.size(); }
    double width(std::size_t b) const { return edges[b + 1] - edges[b]; }
    /// Bin whose [lo, hi) range holds x (the top edge is closed); SIZE_MAX when
    /// x is outside the histogram.
    std::size_t bin_of(double x) const;
};

/// Geometric bin edges from min to max of `values`. Throws DataError on a
/// nonpositive value or n_bins < 2; when all values coincide the edges span
/// [v, v * (1 + 1e-9)].
Histogram log_binned_histogram(std::vector<double> values, std::size_t n_bins);

/// Equal-width counterpart used for node-strength distributions.
Histogram linear_histogram(std::vector<double> values, std::size_t n_bins);

struct PowerLawFit {
    double alpha = 0.0;
    double x_min = 0.0;
    std::size_t n_tail = 0;
};

/// Continuous MLE, alpha = 1 + n / sum ln(x_i / x_min) over x_i >= x_min.
/// Throws DataError with fewer than 10 tail samples.
PowerLawFit fit_power_law_tail(const std::vector<double>& values, double x_min);

struct ExponentialFit {
    double lambda = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
    /// True when the likelihood has no positive stationary point (the in-range
    /// mean is at or above the midpoint); lambda is then reported as 0.
    bool at_boundary = false;
};

/// Truncated-exponential MLE on [lo, hi], solved by bisection to 1e-10.
/// Throws DataError with fewer than 10 samples in range or lo >= hi.
ExponentialFit fit_exponential(const std::vector<double>& values, double lo, double hi);

/// Fixed overlay parameters of the published link- and node-strength plots.
namespace presets {
inline constexpr double kLinkAlpha = 1.9;
inline const double kLinkXMin = 0.031622776601683791;  // 10^-1.5
inline constexpr double kNodeLambda = 0.6;
inline constexpr double kNodeLo = 1.0;
inline constexpr double kNodeHi = 6.0;
inline constexpr std::size_t kLinkBins = 30;
}  // namespace presets

struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

/// Power-law density anchored to equal the histogram density at x_min.
Series overlay_curve(const PowerLawFit& fit, const Histogram& hist, const std::vector<double>& grid);
/// Exponential density anchored to equal the histogram density at lo.
Series overlay_curve(const ExponentialFit& fit, const Histogram& hist, const std::vector<double>& grid);

/// n geometric points between lo and hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace topicnet
