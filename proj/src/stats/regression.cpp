#include "perceprice/stats/regression.hpp"

#include "perceprice/error.hpp"
#include "perceprice/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace perceprice::stats {

std::vector<double> Matrix::column(std::size_t c) const
{
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

Matrix polynomial_design(std::span<const double> x, int degree)
{
    Matrix m(x.size(), static_cast<std::size_t>(degree) + 1);
    for (std::size_t r = 0; r < x.size(); ++r) {
        double v = 1.0;
        for (int k = 0; k <= degree; ++k) {
            m(r, static_cast<std::size_t>(k)) = v;
            v *= x[r];
        }
    }
    return m;
}

namespace {

struct QrSolve {
    Matrix r;                  // p x p upper triangular
    std::vector<double> qty;   // first p entries of Q'y
};

// Householder triangularisation of [X | y]. Throws RankDeficient when a
// pivot collapses relative to its column's norm.
QrSolve householder(const Matrix& x, std::span<const double> y)
{
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    Matrix a = x;
    std::vector<double> b(y.begin(), y.end());

    std::vector<double> col_norm(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += a(i, j) * a(i, j);
        col_norm[j] = std::sqrt(s);
    }

    constexpr double kRankTolerance = 1e-10;
    for (std::size_t k = 0; k < p; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i)
            norm = std::hypot(norm, a(i, k));
        if (!(norm > kRankTolerance * col_norm[k]) || norm == 0.0)
            throw Error(ErrorCode::RankDeficient,
                        "design matrix is rank deficient at column " + std::to_string(k));
        const double alpha = a(k, k) > 0.0 ? -norm : norm;
        // v = a_k - alpha e_k, stored in place below the diagonal.
        std::vector<double> v(n - k);
        for (std::size_t i = k; i < n; ++i)
            v[i - k] = a(i, k);
        v[0] -= alpha;
        double vtv = 0.0;
        for (double e : v)
            vtv += e * e;

        auto reflect = [&](auto&& get) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i)
                dot += v[i - k] * get(i);
            const double scale = 2.0 * dot / vtv;
            for (std::size_t i = k; i < n; ++i)
                get(i) -= scale * v[i - k];
        };
        for (std::size_t j = k + 1; j < p; ++j)
            reflect([&](std::size_t i) -> double& { return a(i, j); });
        reflect([&](std::size_t i) -> double& { return b[i]; });

        a(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i)
            a(i, k) = 0.0;
    }

    QrSolve out{Matrix(p, p), std::vector<double>(b.begin(), b.begin() + static_cast<long>(p))};
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j)
            out.r(i, j) = a(i, j);
    return out;
}

// Inverse of an upper-triangular matrix by column-wise back substitution.
Matrix invert_upper(const Matrix& r)
{
    const std::size_t p = r.rows();
    Matrix inv(p, p);
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t ii = p; ii-- > 0;) {
            double s = ii == c ? 1.0 : 0.0;
            for (std::size_t k = ii + 1; k < p; ++k)
                s -= r(ii, k) * inv(k, c);
            inv(ii, c) = s / r(ii, ii);
        }
    }
    return inv;
}

double one_norm(const Matrix& m)
{
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

}  // namespace

RegressionFit ols(const Matrix& design, std::span<const double> response,
                  std::vector<std::string> term_labels)
{
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (p == 0 || response.size() != n)
        throw Error(ErrorCode::InsufficientData, "design and response sizes do not match");
    if (n < p + 1)
        throw Error(ErrorCode::InsufficientData,
                    "need at least " + std::to_string(p + 1) + " observations, got " +
                        std::to_string(n));
    if (!all_finite(response))
        throw Error(ErrorCode::NonFiniteInput, "response contains non-finite values");
    for (std::size_t c = 0; c < p; ++c)
        if (!all_finite(design.column(c)))
            throw Error(ErrorCode::NonFiniteInput, "design contains non-finite values");

    if (term_labels.empty()) {
        term_labels.emplace_back("(Intercept)");
        for (std::size_t c = 1; c < p; ++c)
            term_labels.push_back("x" + std::to_string(c));
    }
    if (term_labels.size() != p)
        throw Error(ErrorCode::InsufficientData, "one label per design column is required");

    const auto qr = householder(design, response);
    const Matrix r_inv = invert_upper(qr.r);

    RegressionFit fit;
    fit.term_labels = std::move(term_labels);
    fit.n = n;
    fit.df_residual = static_cast<int>(n - p);
    fit.coefficient_estimates.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = i; k < p; ++k)
            fit.coefficient_estimates[i] += r_inv(i, k) * qr.qty[k];

    fit.condition_number = one_norm(qr.r) * one_norm(r_inv);
    if (fit.condition_number > kConditionWarningThreshold) {
        std::ostringstream msg;
        msg << "design matrix is ill-conditioned (condition number ~ " << fit.condition_number << ")";
        fit.warnings.push_back(msg.str());
    }

    // Residuals from the original design keep them orthogonal to its columns.
    fit.fitted.assign(n, 0.0);
    fit.residuals.assign(n, 0.0);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = 0.0;
        for (std::size_t c = 0; c < p; ++c)
            yhat += design(i, c) * fit.coefficient_estimates[c];
        fit.fitted[i] = yhat;
        fit.residuals[i] = response[i] - yhat;
        rss += fit.residuals[i] * fit.residuals[i];
    }
    const double y_mean = std::accumulate(response.begin(), response.end(), 0.0) / static_cast<double>(n);
    double tss = 0.0;
    for (double y : response)
        tss += (y - y_mean) * (y - y_mean);

    const double sigma2 = rss / fit.df_residual;
    for (std::size_t i = 0; i < p; ++i) {
        // (X'X)^-1 = R^-1 R^-T, so its diagonal is the squared row norm of R^-1.
        double v = 0.0;
        for (std::size_t k = i; k < p; ++k)
            v += r_inv(i, k) * r_inv(i, k);
        const double se = std::sqrt(sigma2 * v);
        const double est = fit.coefficient_estimates[i];
        double t;
        double pv;
        if (se > 0.0) {
            t = est / se;
            pv = student_t_two_sided(t, fit.df_residual);
        } else {
            t = est == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), est);
            pv = est == 0.0 ? 1.0 : 0.0;
        }
        fit.standard_errors.push_back(se);
        fit.t_values.push_back(t);
        fit.p_values.push_back(pv);
    }

    if (tss > 0.0) {
        fit.r_squared = std::clamp(1.0 - rss / tss, 0.0, 1.0);
    }
    if (p > 1 && tss > 0.0) {
        const int df_model = static_cast<int>(p - 1);
        const double explained = std::max(tss - rss, 0.0);
        if (rss > 0.0) {
            fit.f_statistic = (explained / df_model) / sigma2;
            fit.f_p_value = f_upper_tail(fit.f_statistic, df_model, fit.df_residual);
        } else {
            fit.f_statistic = std::numeric_limits<double>::infinity();
            fit.f_p_value = 0.0;
        }
    }
    return fit;
}

std::vector<double> log_transform(std::span<const double> values, LogPolicy policy)
{
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        switch (policy) {
        case LogPolicy::AbsLog:
            if (v == 0.0)
                throw Error(ErrorCode::ZeroValueUnderAbsLog, "ln|x| is undefined at x = 0");
            out.push_back(std::log(std::abs(v)));
            break;
        case LogPolicy::SignedLog1p:
            out.push_back(std::copysign(std::log1p(std::abs(v)), v));
            break;
        case LogPolicy::DropNonPositive:
            if (v > 0.0)
                out.push_back(std::log(v));
            break;
        }
    }
    return out;
}

RegressionFit fit_log_ratio_regression(std::span<const double> ratio,
                                       std::span<const double> regressor, LogPolicy policy,
                                       DependentChoice dependent, std::string regressor_label)
{
    if (ratio.size() != regressor.size())
        throw Error(ErrorCode::InsufficientData, "ratio and regressor lengths differ");

    std::vector<double> x;
    std::vector<double> y;
    if (policy == LogPolicy::DropNonPositive) {
        for (std::size_t i = 0; i < ratio.size(); ++i) {
            const bool keep = regressor[i] > 0.0 &&
                              (dependent == DependentChoice::RawRatio || ratio[i] > 0.0);
            if (!keep)
                continue;
            x.push_back(std::log(regressor[i]));
            y.push_back(dependent == DependentChoice::LogRatio ? std::log(ratio[i]) : ratio[i]);
        }
        if (x.size() < 3)
            throw Error(ErrorCode::EmptyAfterTransform,
                        "fewer than 3 rows remain after dropping non-positive values");
    } else {
        x = log_transform(regressor, policy);
        if (dependent == DependentChoice::LogRatio)
            y = log_transform(ratio, policy);
        else
            y.assign(ratio.begin(), ratio.end());
    }
    return ols(polynomial_design(x, 1), y, {"(Intercept)", std::move(regressor_label)});
}

std::string_view significance_code(double p)
{
    if (p <= 0.001)
        return "***";
    if (p <= 0.01)
        return "**";
    if (p <= 0.05)
        return "*";
    if (p <= 0.1)
        return ".";
    return "";
}

std::string_view to_string(LogPolicy policy) noexcept
{
    switch (policy) {
    case LogPolicy::AbsLog: return "abs";
    case LogPolicy::SignedLog1p: return "signed-log1p";
    case LogPolicy::DropNonPositive: return "drop";
    }
    return "abs";
}

std::string_view to_string(DependentChoice choice) noexcept
{
    return choice == DependentChoice::LogRatio ? "log-ratio" : "raw-ratio";
}

}  // namespace perceprice::stats
