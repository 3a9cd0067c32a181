#pragma once

// Test-only reference CDFs obtained by numerically integrating the
// densities. Deliberately shares nothing with the incomplete-beta path.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14)
{
    // Split into panels so the adaptive scheme sees the shape everywhere.
    constexpr int kPanels = 64;
    const double h = (b - a) / kPanels;
    double total = 0.0;
    for (int k = 0; k < kPanels; ++k) {
        const double lo = a + k * h;
        const double hi = lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = h / 6.0 * (flo + 4.0 * fm + fhi);
        total += simpson(f, lo, hi, flo, fm, fhi, whole, tol / kPanels, 40);
    }
    return total;
}

inline double t_density(double u, double df)
{
    const double log_c = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                         0.5 * std::log(df * std::numbers::pi);
    return std::exp(log_c - 0.5 * (df + 1.0) * std::log1p(u * u / df));
}

inline double t_cdf(double t, double df)
{
    const double half = integrate([df](double u) { return t_density(u, df); }, 0.0, std::abs(t));
    return t >= 0 ? 0.5 + half : 0.5 - half;
}

/// P(F <= f), integrated in u = sqrt(x) so the df1 = 1 singularity vanishes.
inline double f_cdf(double f, double d1, double d2)
{
    const double log_b = std::lgamma(0.5 * d1) + std::lgamma(0.5 * d2) - std::lgamma(0.5 * (d1 + d2));
    const double log_c = 0.5 * d1 * std::log(d1 / d2) - log_b;
    auto integrand = [=](double u) {
        if (u == 0.0)
            return d1 == 1.0 ? 2.0 * std::exp(log_c) : 0.0;
        const double x = u * u;
        return 2.0 * std::exp(log_c + (d1 - 1.0) * std::log(u) -
                              0.5 * (d1 + d2) * std::log1p(d1 * x / d2));
    };
    return integrate(integrand, 0.0, std::sqrt(f));
}

}  // namespace oracle
