#include "perceprice/stats/distributions.hpp"

#include "perceprice/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace perceprice::stats {
namespace {

// Continued fraction for I_x(a, b), modified Lentz's method.
double beta_continued_fraction(double a, double b, double x)
{
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    return h;
}

struct BetaPair {
    double lower;  // I_x(a, b)
    double upper;  // 1 - I_x(a, b)
};

BetaPair incomplete_beta_pair(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || std::isnan(x))
        throw Error(ErrorCode::InvalidDegreesOfFreedom, "incomplete beta requires a, b > 0");
    if (x <= 0.0)
        return {0.0, 1.0};
    if (x >= 1.0)
        return {1.0, 0.0};
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double lower = front * beta_continued_fraction(a, b, x) / a;
        return {lower, 1.0 - lower};
    }
    const double upper = front * beta_continued_fraction(b, a, 1.0 - x) / b;
    return {1.0 - upper, upper};
}

void require_df(int df)
{
    if (df < 1)
        throw Error(ErrorCode::InvalidDegreesOfFreedom,
                    "degrees of freedom must be >= 1, got " + std::to_string(df));
}

double poly_eval(const double* coeffs, int n, double x)
{
    double r = 0.0;
    for (int i = n - 1; i >= 0; --i)
        r = r * x + coeffs[i];
    return r;
}

}  // namespace

double incomplete_beta(double a, double b, double x)
{
    return incomplete_beta_pair(a, b, x).lower;
}

double incomplete_beta_complement(double a, double b, double x)
{
    return incomplete_beta_pair(a, b, x).upper;
}

double student_t_cdf(double t, int df)
{
    require_df(df);
    if (std::isnan(t))
        return t;
    if (std::isinf(t))
        return t > 0 ? 1.0 : 0.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided(double t, int df)
{
    require_df(df);
    if (std::isinf(t))
        return 0.0;
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double f_cdf(double f, int df1, int df2)
{
    require_df(df1);
    require_df(df2);
    if (f <= 0.0)
        return 0.0;
    if (std::isinf(f))
        return 1.0;
    return incomplete_beta(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
}

double f_upper_tail(double f, int df1, int df2)
{
    require_df(df1);
    require_df(df2);
    if (f <= 0.0)
        return 1.0;
    if (std::isinf(f))
        return 0.0;
    return incomplete_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_upper_tail(double z)
{
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0)
            return -std::numeric_limits<double>::infinity();
        if (p == 1.0)
            return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    static constexpr double a[8] = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                                    1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                    4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                    3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr double b[8] = {1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                    5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                    3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                    5.2264952788528545610e+3};
    static constexpr double c[8] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                    5.76949722146069140550e0, 3.64784832476320460504e0,
                                    1.27045825245236838258e0, 2.41780725177450611770e-1,
                                    2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
                                    6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                    1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                    1.05075007164441684324e-9};
    static constexpr double e[8] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                    1.78482653991729133580e0, 2.96560571828504891230e-1,
                                    2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                    2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                    1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                    1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                    2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly_eval(a, 8, r) / poly_eval(b, 8, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = poly_eval(c, 8, r) / poly_eval(d, 8, r);
    } else {
        r -= 5.0;
        z = poly_eval(e, 8, r) / poly_eval(f, 8, r);
    }
    return q < 0.0 ? -z : z;
}

}  // namespace perceprice::stats
