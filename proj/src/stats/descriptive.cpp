#include "perceprice/stats/descriptive.hpp"

#include "perceprice/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace perceprice::stats {

SampleSummary describe(std::span<const double> values)
{
    if (values.size() < 2)
        throw Error(ErrorCode::InsufficientData, "describe needs at least 2 values");
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
        throw Error(ErrorCode::NonFiniteInput, "describe requires finite values");

    // Sorting first makes every accumulation order-independent.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    SampleSummary s;
    s.n = n;
    s.minimum = sorted.front();
    s.maximum = sorted.back();
    s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : sorted)
        ss += (v - s.mean) * (v - s.mean);
    s.standard_deviation = std::sqrt(ss / static_cast<double>(n - 1));
    s.standard_error = s.standard_deviation / std::sqrt(static_cast<double>(n));
    // Rounding in the mean can push it a hair outside [min, max] for
    // near-constant samples.
    s.mean = std::clamp(s.mean, s.minimum, s.maximum);
    return s;
}

Histogram histogram(std::span<const double> values, double bin_width, double anchor)
{
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw Error(ErrorCode::InvalidBinWidth, "bin width must be a positive finite number");
    if (values.empty())
        throw Error(ErrorCode::InsufficientData, "histogram needs at least one value");
    if (!std::isfinite(anchor) ||
        !std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
        throw Error(ErrorCode::NonFiniteInput, "histogram requires finite values");

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double first_index = std::floor((*lo_it - anchor) / bin_width);
    const double last_index = std::floor((*hi_it - anchor) / bin_width);
    auto edge = [&](double k) { return anchor + k * bin_width; };

    double start = first_index;
    while (edge(start) > *lo_it)
        start -= 1.0;
    double stop = last_index + 1.0;
    while (edge(stop) <= *hi_it)
        stop += 1.0;

    Histogram h;
    const auto bins = static_cast<std::size_t>(stop - start);
    h.bin_edges.reserve(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k)
        h.bin_edges.push_back(edge(start + static_cast<double>(k)));
    h.counts.assign(bins, 0);

    for (double v : values) {
        // upper_bound finds the first edge > v; the bin is the one before it.
        const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
        const auto idx = static_cast<std::size_t>(it - h.bin_edges.begin()) - 1;
        ++h.counts[idx];
    }
    return h;
}

}  // namespace perceprice::stats
