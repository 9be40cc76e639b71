#include "topicnet/dist_fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "topicnet/error.hpp"

namespace topicnet {

std::size_t Histogram::bin_of(double x) const {
    if (edges.size() < 2 || x < edges.front() || x > edges.back()) return SIZE_MAX;
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t b = static_cast<std::size_t>(it - edges.begin());
    return std::min(b == 0 ? 0 : b - 1, bins() - 1);
}

namespace {

Histogram fill(std::vector<double> edges, const std::vector<double>& sorted) {
    Histogram h;
    h.edges = std::move(edges);
    const std::size_t bins = h.edges.size() - 1;
    h.count.assign(bins, 0);
    h.density.assign(bins, 0.0);
    for (double v : sorted) {
        std::size_t b = h.bin_of(v);
        if (b != SIZE_MAX) ++h.count[b];
    }
    const double total = static_cast<double>(sorted.size());
    for (std::size_t b = 0; b < bins; ++b) {
        h.density[b] = total > 0 ? static_cast<double>(h.count[b]) / (h.width(b) * total) : 0.0;
    }
    return h;
}

}  // namespace

Histogram log_binned_histogram(std::vector<double> values, std::size_t n_bins) {
    if (n_bins < 2) throw DataError("log binning needs at least 2 bins");
    if (values.empty()) throw DataError("log binning needs at least one value");
    std::sort(values.begin(), values.end());
    if (!(values.front() > 0.0)) throw DataError("log binning needs positive values");
    const double lo = values.front();
    double hi = values.back();
    if (hi == lo) hi = lo * (1.0 + 1e-9);
    const double step = std::log(hi / lo) / static_cast<double>(n_bins);
    std::vector<double> edges(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) edges[k] = lo * std::exp(step * static_cast<double>(k));
    edges.front() = lo;
    edges.back() = hi;
    return fill(std::move(edges), values);
}

Histogram linear_histogram(std::vector<double> values, std::size_t n_bins) {
    if (n_bins < 1) throw DataError("histogram needs at least 1 bin");
    if (values.empty()) throw DataError("histogram needs at least one value");
    std::sort(values.begin(), values.end());
    const double lo = values.front();
    double hi = values.back();
    if (hi == lo) hi = lo + 1e-9 * std::max(1.0, std::fabs(lo));
    std::vector<double> edges(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) {
        edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_bins);
    }
    edges.back() = hi;
    return fill(std::move(edges), values);
}

PowerLawFit fit_power_law_tail(const std::vector<double>& values, double x_min) {
    if (!(x_min > 0.0)) throw DataError("power-law x_min must be positive");
    std::vector<double> tail;
    for (double v : values) {
        if (v >= x_min) tail.push_back(v);
    }
    if (tail.size() < 10) {
        throw DataError("power-law fit needs >= 10 samples at or above x_min, got " + std::to_string(tail.size()));
    }
    std::sort(tail.begin(), tail.end());
    double log_sum = 0.0;
    for (double v : tail) log_sum += std::log(v / x_min);
    if (!(log_sum > 0.0)) throw DataError("power-law fit is degenerate: all tail samples equal x_min");
    return {1.0 + static_cast<double>(tail.size()) / log_sum, x_min, tail.size()};
}

namespace {

/// Mean of (x - lo) under the exponential density truncated to a range of
/// length `span`.
double truncated_mean(double lambda, double span) {
    const double u = lambda * span;
    if (u < 1e-6) return span * (0.5 - u / 12.0);
    return 1.0 / lambda - span / std::expm1(u);
}

}  // namespace

ExponentialFit fit_exponential(const std::vector<double>& values, double lo, double hi) {
    if (!(lo < hi)) throw DataError("exponential fit range must satisfy lo < hi");
    std::vector<double> in_range;
    for (double v : values) {
        if (v >= lo && v <= hi) in_range.push_back(v);
    }
    if (in_range.size() < 10) {
        throw DataError("exponential fit needs >= 10 samples in range, got " + std::to_string(in_range.size()));
    }
    std::sort(in_range.begin(), in_range.end());
    double mean = 0.0;
    for (double v : in_range) mean += v - lo;
    mean /= static_cast<double>(in_range.size());

    ExponentialFit fit;
    fit.lo = lo;
    fit.hi = hi;
    fit.n = in_range.size();
    const double span = hi - lo;
    if (mean >= span / 2.0) {
        fit.at_boundary = true;
        return fit;
    }
    // truncated_mean decreases from span/2 (lambda -> 0) to 0 (lambda -> inf).
    double a = 0.0;
    double b = 1.0 / span;
    while (truncated_mean(b, span) > mean) b *= 2.0;
    while (b - a > 1e-10 * std::max(1.0, b) && b - a > 1e-300) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        if (truncated_mean(mid, span) > mean) {
            a = mid;
        } else {
            b = mid;
        }
    }
    fit.lambda = 0.5 * (a + b);
    return fit;
}

Series overlay_curve(const PowerLawFit& fit, const Histogram& hist, const std::vector<double>& grid) {
    Series s;
    const std::size_t b = hist.bin_of(fit.x_min);
    const double anchor = b == SIZE_MAX ? 0.0 : hist.density[b];
    for (double x : grid) {
        s.x.push_back(x);
        s.y.push_back(anchor * std::pow(x / fit.x_min, -fit.alpha));
    }
    return s;
}

Series overlay_curve(const ExponentialFit& fit, const Histogram& hist, const std::vector<double>& grid) {
    Series s;
    const std::size_t b = hist.bin_of(fit.lo);
    const double anchor = b == SIZE_MAX ? 0.0 : hist.density[b];
    for (double x : grid) {
        s.x.push_back(x);
        s.y.push_back(anchor * std::exp(-fit.lambda * (x - fit.lo)));
    }
    return s;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out.push_back(lo * std::exp(step * static_cast<double>(k)));
    out.back() = hi;
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    for (std::size_t k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return out;
}

}  // namespace topicnet
