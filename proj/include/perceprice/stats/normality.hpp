#pragma once

#include <cstddef>
#include <span>

namespace perceprice::stats {

struct NormalityTestResult {
    double w_statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
};

/// Shapiro-Wilk W test using Royston's (1995) approximations for the
/// coefficients and the null distribution of W. 3 <= n <= 5000.
NormalityTestResult shapiro_wilk(std::span<const double> values);

}  // namespace perceprice::stats
