#include "perceprice/stats/normality.hpp"

#include "perceprice/error.hpp"
#include "perceprice/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace perceprice::stats {
namespace {

double poly(std::span<const double> c, double x)
{
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + *it;
    return r;
}

// Half of the antisymmetric coefficient vector: a[i] weights
// x_(n-i) - x_(i+1) for i < n/2. Normalised so 2 * sum(a^2) = 1.
std::vector<double> royston_coefficients(std::size_t n)
{
    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};

    const std::size_t half = n / 2;
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::numbers::sqrt2 / 2.0;
        return a;
    }

    const double an = static_cast<double>(n);
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);

    const double a1 = poly(c1, rsn) - m[0] / ssumm2;
    std::size_t first_scaled;
    double fac;
    if (n > 5) {
        const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                        (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        a[1] = a2;
        first_scaled = 2;
    } else {
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        first_scaled = 1;
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i)
        a[i] = -m[i] / fac;
    return a;
}

}  // namespace

NormalityTestResult shapiro_wilk(std::span<const double> values)
{
    const std::size_t n = values.size();
    if (n < 3)
        throw Error(ErrorCode::InsufficientData, "Shapiro-Wilk needs at least 3 values");
    if (n > 5000)
        throw Error(ErrorCode::InsufficientData, "Shapiro-Wilk supports at most 5000 values");
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }))
        throw Error(ErrorCode::NonFiniteInput, "Shapiro-Wilk requires finite values");

    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 0.0))
        throw Error(ErrorCode::DegenerateSample, "all values are identical");

    // Scaling by the range keeps the sums well conditioned.
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double ssx = 0.0;
    for (double& v : x) {
        v = (v - mean) / range;
        ssx += v * v;
    }

    const auto a = royston_coefficients(n);
    double sax = 0.0;
    double ssa = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sax += a[i] * (x[n - 1 - i] - x[i]);
        ssa += 2.0 * a[i] * a[i];
    }
    double w = sax * sax / (ssa * ssx);
    w = std::min(w, 1.0);

    NormalityTestResult out;
    out.n = n;
    out.w_statistic = w;

    if (n == 3) {
        constexpr double six_over_pi = 6.0 / std::numbers::pi;
        constexpr double pi_over_3 = std::numbers::pi / 3.0;
        w = std::max(w, 0.75);
        out.w_statistic = w;
        out.p_value = std::clamp(six_over_pi * (std::asin(std::sqrt(w)) - pi_over_3), 0.0, 1.0);
        return out;
    }

    static constexpr double g[] = {-2.273, 0.459};
    static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    const double an = static_cast<double>(n);
    double y = std::log1p(-w);
    double mu;
    double sigma;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            out.p_value = 0.0;
            return out;
        }
        y = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
    } else {
        const double ln_n = std::log(an);
        mu = poly(c5, ln_n);
        sigma = std::exp(poly(c6, ln_n));
    }
    out.p_value = std::clamp(normal_upper_tail((y - mu) / sigma), 0.0, 1.0);
    return out;
}

}  // namespace perceprice::stats
