#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace perceprice::stats {

struct SampleSummary {
    double mean = 0.0;
    double median = 0.0;
    double minimum = 0.0;
    double maximum = 0.0;
    double standard_error = 0.0;      // standard_deviation / sqrt(n)
    double standard_deviation = 0.0;  // n - 1 denominator
    std::size_t n = 0;
};

/// Summary of a sample of at least two finite values. The result does not
/// depend on input order.
SampleSummary describe(std::span<const double> values);

struct Histogram {
    std::vector<double> bin_edges;  // bins + 1 strictly increasing edges
    std::vector<std::size_t> counts;
};

/// Half-open bins [edge, edge + width) on a grid that contains `anchor`,
/// covering every value.
Histogram histogram(std::span<const double> values, double bin_width, double anchor = 0.0);

}  // namespace perceprice::stats
