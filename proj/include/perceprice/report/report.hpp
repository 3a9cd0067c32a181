#pragma once

// Reconstruction of the study's tables and figures from a corpus. Every
// function is a pure function of (corpus, options).
//
// When the corpus is the embedded one, each recomputed cell is compared
// with the printed value at its printed precision, and every mismatch is
// recorded as a Divergence and a footnote.

#include "perceprice/corpus.hpp"
#include "perceprice/stats/descriptive.hpp"
#include "perceprice/stats/regression.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace perceprice::report {

/// Full-precision value behind a displayed number.
struct Shadow {
    double value = 0.0;
    int precision = 2;
};

/// A displayed cell. Numeric cells carry one shadow (or two for "W (p)"
/// cells); their text is exactly the shadows rounded at their precision.
struct Cell {
    std::string text;
    std::vector<Shadow> shadows;

    static Cell label(std::string text) { return {std::move(text), {}}; }
    static Cell number(double value, int precision);
    static Cell number_pair(Shadow first, Shadow second);  // "a (b)"
};

/// Text a cell must show given its shadows; empty when it has none.
std::string text_from_shadows(const Cell& cell);

struct Divergence {
    std::string row;
    std::string column;
    std::string computed;  // at the printed precision
    std::string printed;
    std::string note;      // optional explanation
};

struct ReportTable {
    std::string id;  // "table1" ...
    std::string title;
    std::vector<std::string> column_headers;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;  // model statistics
    std::vector<std::string> footnotes;
    std::vector<Divergence> divergences;
};

enum class SeriesKind { Scatter, Histogram, Curve };
enum class PlotKind { Scatter, Histogram };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Series {
    std::string name;
    SeriesKind kind = SeriesKind::Scatter;
    std::vector<Point> points;          // Scatter, Curve
    std::vector<std::string> labels;    // optional, one per point
    std::optional<stats::Histogram> bins;  // Histogram
};

struct PlotData {
    std::string id;
    std::string title;
    PlotKind kind = PlotKind::Scatter;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<double> curve_coefficients;  // polynomial, constant term first
    std::vector<std::string> footnotes;
};

struct ReportOptions {
    corpus::DerivationMode mode = corpus::DerivationMode::AsPublished;
    double epsilon = identity::kDefaultEpsilon;
    stats::LogPolicy log_policy = stats::LogPolicy::AbsLog;
    stats::DependentChoice dependent = stats::DependentChoice::LogRatio;
    /// Reproduce the printed artifacts verbatim, with no recomputation.
    bool strict_paper = false;
    double bin_width = 1.0;
    double bin_anchor = 0.0;
    bool quadratic_curve = true;
};

/// Columns feeding the analysis in a given mode.
std::vector<double> income_elasticities(const corpus::Corpus& c, corpus::DerivationMode mode);
std::vector<double> ratios(const corpus::Corpus& c, corpus::DerivationMode mode);

ReportTable table1(const corpus::Corpus& c, const ReportOptions& opt = {});
ReportTable table2(const corpus::Corpus& c, const ReportOptions& opt = {});
std::pair<ReportTable, ReportTable> table3_4(const corpus::Corpus& c, const ReportOptions& opt = {});
std::pair<ReportTable, ReportTable> table5_6(const corpus::Corpus& c, const ReportOptions& opt = {});
ReportTable discrepancy_table(const corpus::Corpus& c,
                              double tolerance = corpus::kDefaultDiscrepancyTolerance);

PlotData figure1(const corpus::Corpus& c, const ReportOptions& opt = {});
PlotData figure2(const corpus::Corpus& c, const ReportOptions& opt = {});

/// Fits behind the regression tables.
stats::RegressionFit quadratic_fit(const corpus::Corpus& c, corpus::DerivationMode mode);
stats::RegressionFit linear_fit(const corpus::Corpus& c, corpus::DerivationMode mode);

/// One (transform policy, dependent variable) interpretation of the
/// log-ratio regressions and how close it comes to the printed tables.
struct LogRatioCandidate {
    stats::LogPolicy policy;
    stats::DependentChoice dependent;
    std::optional<stats::RegressionFit> on_income;  // ratio ~ log(eta_i)
    std::optional<stats::RegressionFit> on_price;   // ratio ~ log(eta_p)
    std::string failure;                            // set when a fit failed
    bool matches_income_table = false;
    bool matches_price_table = false;
    double distance = 0.0;  // summed scaled deviation from the printed targets
};

/// Evaluates all policy x dependent-variable combinations, closest first.
std::vector<LogRatioCandidate> search_log_ratio_interpretations(const corpus::Corpus& c,
                                                                corpus::DerivationMode mode);
ReportTable log_ratio_search_table(const corpus::Corpus& c, const ReportOptions& opt = {});

struct Artifact {
    std::string id;
    std::variant<ReportTable, PlotData> content;
};

/// Every table and figure, once each, in a fixed order.
std::vector<Artifact> replicate_all(const corpus::Corpus& c, const ReportOptions& opt = {});

/// Checks the numeric-shadow invariant over a table.
bool shadows_consistent(const ReportTable& table);

}  // namespace perceprice::report
