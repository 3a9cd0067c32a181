#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perceprice::stats {

/// Dense row-major matrix, just enough for regression design matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double> column(std::size_t c) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// [1, x, x^2, ..., x^degree] per row.
Matrix polynomial_design(std::span<const double> x, int degree);

inline constexpr double kConditionWarningThreshold = 1e8;

struct RegressionFit {
    std::vector<std::string> term_labels;
    std::vector<double> coefficient_estimates;  // intercept first
    std::vector<double> standard_errors;
    std::vector<double> t_values;
    std::vector<double> p_values;  // two-sided
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r_squared = 0.0;
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    int df_residual = 0;
    std::size_t n = 0;
    double condition_number = 1.0;  // 1-norm condition estimate of R
    std::vector<std::string> warnings;
};

/// Ordinary least squares by Householder QR of the design matrix. The first
/// design column must be the intercept; F tests against the intercept-only
/// model.
RegressionFit ols(const Matrix& design, std::span<const double> response,
                  std::vector<std::string> term_labels = {});

enum class LogPolicy {
    AbsLog,           // ln|x|
    SignedLog1p,      // sign(x) * ln(1 + |x|)
    DropNonPositive,  // ln x, rows with x <= 0 removed
};

/// What the log-ratio regression uses as its response.
enum class DependentChoice { RawRatio, LogRatio };

/// Applies `policy` elementwise. DropNonPositive omits non-positive values,
/// so the result may be shorter than the input.
std::vector<double> log_transform(std::span<const double> values, LogPolicy policy);

/// Regresses the (optionally log-transformed) ratio on the log-transformed
/// regressor plus an intercept. Under DropNonPositive a row is removed when
/// either transformed variable would be undefined.
RegressionFit fit_log_ratio_regression(std::span<const double> ratio,
                                       std::span<const double> regressor, LogPolicy policy,
                                       DependentChoice dependent,
                                       std::string regressor_label = "log(x)");

/// R-style legend: *** <= 0.001 < ** <= 0.01 < * <= 0.05 < . <= 0.1.
std::string_view significance_code(double p);

std::string_view to_string(LogPolicy policy) noexcept;
std::string_view to_string(DependentChoice choice) noexcept;

}  // namespace perceprice::stats
