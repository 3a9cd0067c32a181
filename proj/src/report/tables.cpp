#include "perceprice/report/report.hpp"

#include "perceprice/error.hpp"
#include "perceprice/report/format.hpp"
#include "perceprice/stats/normality.hpp"
#include "printed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <span>

namespace perceprice::report {

using corpus::Column;
using corpus::Corpus;
using corpus::DerivationMode;

Cell Cell::number(double value, int precision)
{
    return {format_fixed(value, precision), {{value, precision}}};
}

Cell Cell::number_pair(Shadow first, Shadow second)
{
    return {format_fixed(first.value, first.precision) + " (" +
                format_fixed(second.value, second.precision) + ")",
            {first, second}};
}

std::string text_from_shadows(const Cell& cell)
{
    switch (cell.shadows.size()) {
    case 0: return {};
    case 1: return format_fixed(cell.shadows[0].value, cell.shadows[0].precision);
    default:
        return format_fixed(cell.shadows[0].value, cell.shadows[0].precision) + " (" +
               format_fixed(cell.shadows[1].value, cell.shadows[1].precision) + ")";
    }
}

bool shadows_consistent(const ReportTable& table)
{
    auto ok = [](const Cell& c) { return c.shadows.empty() || c.text == text_from_shadows(c); };
    for (const auto& row : table.rows) {
        if (row.size() != table.column_headers.size())
            return false;
        if (!std::all_of(row.begin(), row.end(), ok))
            return false;
    }
    return std::all_of(table.summary.begin(), table.summary.end(),
                       [&](const auto& entry) { return ok(entry.second); });
}

std::vector<double> income_elasticities(const Corpus& c, DerivationMode mode)
{
    return corpus::column(c, mode == DerivationMode::AsPublished ? Column::EtaIReconciled : Column::EtaI);
}

std::vector<double> ratios(const Corpus& c, DerivationMode mode)
{
    return corpus::column(c, mode == DerivationMode::AsPublished ? Column::RatioAsPublished
                                                                 : Column::RatioRecomputed);
}

namespace {

constexpr std::string_view kSignifLegend =
    "Signif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1";

double parse_printed(std::string_view s)
{
    if (!s.empty() && s.front() == '<')
        s.remove_prefix(1);
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

Cell printed_cell(std::string_view s)
{
    if (s.empty() || s.front() == '<' || s.front() == '(')
        return Cell::label(std::string(s));
    return Cell::number(parse_printed(s), decimals_of(s));
}

bool compares_with_printed(const Corpus& c)
{
    return c.origin() == corpus::Origin::Embedded;
}

void require_embedded(const Corpus& c)
{
    if (!compares_with_printed(c))
        throw Error(ErrorCode::InvalidArgument,
                    "verbatim printed values exist only for the embedded corpus");
}

class DivergenceLog {
public:
    explicit DivergenceLog(ReportTable& table) : table_(table) {}

    void number(double computed, std::string_view printed, std::string row, std::string column,
                std::string note = {})
    {
        if (!printed.empty() && printed.front() == '<') {
            const double bound = parse_printed(printed);
            if (!(computed < bound))
                add({std::move(row), std::move(column),
                     format_fixed(computed, decimals_of(printed)), std::string(printed), std::move(note)});
            return;
        }
        const int d = decimals_of(printed);
        const std::string mine = format_fixed(computed, d);
        if (mine != format_fixed(parse_printed(printed), d))
            add({std::move(row), std::move(column), mine, std::string(printed), std::move(note)});
    }

    void code(std::string_view computed, std::string_view printed, std::string row, std::string note = {})
    {
        std::string bare(printed);
        bare.erase(std::remove_if(bare.begin(), bare.end(), [](char ch) { return ch == '(' || ch == ')'; }),
                   bare.end());
        if (bare != computed)
            add({std::move(row), "Significance", computed.empty() ? "(none)" : std::string(computed),
                 std::string(printed), std::move(note)});
    }

    void add(Divergence d)
    {
        std::string text = "Differs from printed value: " + d.row + " / " + d.column + ": computed " +
                           d.computed + ", printed " + d.printed + ".";
        if (!d.note.empty())
            text += " " + d.note;
        table_.footnotes.push_back(std::move(text));
        table_.divergences.push_back(std::move(d));
    }

private:
    ReportTable& table_;
};

std::string mode_suffix(const ReportOptions& opt)
{
    if (opt.strict_paper)
        return " [printed values]";
    return " [" + std::string(corpus::to_string(opt.mode)) + "]";
}

void note_reconciled(ReportTable& t, const Corpus& c, DerivationMode mode)
{
    if (mode != DerivationMode::AsPublished)
        return;
    std::string list;
    for (const auto& r : c.records()) {
        const double rec = corpus::reconciled_eta_i(r);
        if (rec != r.eta_i) {
            if (!list.empty())
                list += "; ";
            list += r.commodity + " " + format_shortest(rec);
        }
    }
    if (!list.empty())
        t.footnotes.push_back("η_i uses the sign implied by the printed ratio column for: " + list + ".");
}

const std::array<std::string_view, 6> kStatRows = {"Mean", "Median", "Minimum", "Maximum", "S.E.", "S.D."};

}  // namespace

ReportTable table1(const Corpus& c, const ReportOptions& opt)
{
    ReportTable t;
    t.id = "table1";
    t.title = "Table 1. Descriptive statistics" + mode_suffix(opt);
    t.column_headers = {"", "η_p", "η_i", "η_p/η_i"};

    if (opt.strict_paper) {
        require_embedded(c);
        for (std::size_t r = 0; r < kStatRows.size(); ++r) {
            std::vector<Cell> row{Cell::label(std::string(kStatRows[r]))};
            for (auto s : printed::kTable1Stats[r])
                row.push_back(printed_cell(s));
            t.rows.push_back(std::move(row));
        }
        std::vector<Cell> sw{Cell::label("Shapiro-Wilk (p-value)")};
        for (std::size_t k = 0; k < 3; ++k)
            sw.push_back(Cell::number_pair({parse_printed(printed::kTable1W[k]), decimals_of(printed::kTable1W[k])},
                                           {parse_printed(printed::kTable1P[k]), decimals_of(printed::kTable1P[k])}));
        t.rows.push_back(std::move(sw));
        t.rows.push_back({Cell::label("n"), printed_cell(printed::kTable1N), printed_cell(printed::kTable1N),
                          printed_cell(printed::kTable1N)});
        return t;
    }

    const std::array<std::vector<double>, 3> columns = {
        corpus::column(c, Column::EtaP), income_elasticities(c, opt.mode), ratios(c, opt.mode)};
    std::array<stats::SampleSummary, 3> summaries;
    std::array<stats::NormalityTestResult, 3> normality;
    for (std::size_t k = 0; k < 3; ++k) {
        summaries[k] = stats::describe(columns[k]);
        normality[k] = stats::shapiro_wilk(columns[k]);
    }

    auto stat = [&](std::size_t row, std::size_t k) {
        const auto& s = summaries[k];
        switch (row) {
        case 0: return s.mean;
        case 1: return s.median;
        case 2: return s.minimum;
        case 3: return s.maximum;
        case 4: return s.standard_error;
        default: return s.standard_deviation;
        }
    };

    for (std::size_t r = 0; r < kStatRows.size(); ++r) {
        std::vector<Cell> row{Cell::label(std::string(kStatRows[r]))};
        for (std::size_t k = 0; k < 3; ++k)
            row.push_back(Cell::number(stat(r, k), 2));
        t.rows.push_back(std::move(row));
    }
    std::vector<Cell> sw{Cell::label("Shapiro-Wilk (p-value)")};
    for (std::size_t k = 0; k < 3; ++k)
        sw.push_back(Cell::number_pair({normality[k].w_statistic, 3}, {normality[k].p_value, 3}));
    t.rows.push_back(std::move(sw));
    std::vector<Cell> n_row{Cell::label("n")};
    for (std::size_t k = 0; k < 3; ++k)
        n_row.push_back(Cell::number(static_cast<double>(summaries[k].n), 0));
    t.rows.push_back(std::move(n_row));

    note_reconciled(t, c, opt.mode);
    t.footnotes.push_back("S.D. uses the n - 1 denominator; S.E. = S.D./sqrt(n).");

    if (compares_with_printed(c)) {
        DivergenceLog log(t);
        for (std::size_t r = 0; r < kStatRows.size(); ++r) {
            for (std::size_t k = 0; k < 3; ++k) {
                std::string note;
                if (r == 2 && k == 1 && opt.mode == DerivationMode::Recomputed)
                    note = "No printed row has η_i = -0.9; the printed minimum matches the "
                           "sign-reconciled Sugar, USA value -0.898 (as-published mode).";
                if (r == 4 && k == 2)
                    note = "The printed S.E. is not S.D./sqrt(30) for the printed S.D. of 2.75.";
                log.number(stat(r, k), printed::kTable1Stats[r][k], std::string(kStatRows[r]),
                           std::string(t.column_headers[k + 1]), std::move(note));
            }
        }
        for (std::size_t k = 0; k < 3; ++k) {
            log.number(normality[k].w_statistic, printed::kTable1W[k], "Shapiro-Wilk W",
                       std::string(t.column_headers[k + 1]));
            log.number(normality[k].p_value, printed::kTable1P[k], "Shapiro-Wilk p-value",
                       std::string(t.column_headers[k + 1]));
            log.number(static_cast<double>(summaries[k].n), printed::kTable1N, "n",
                       std::string(t.column_headers[k + 1]));
        }
    }
    return t;
}

ReportTable table2(const Corpus& c, const ReportOptions& opt)
{
    ReportTable t;
    t.id = "table2";
    t.title = "Table 2. Price and income elasticities, elasticity ratios and price perception errors" +
              mode_suffix(opt);

    if (opt.strict_paper) {
        require_embedded(c);
        t.column_headers = {"Commodity/Service", "η_p", "η_i", "η_p/η_i", "(η_p/η_i)-1", "Source"};
        for (const auto& r : c.records()) {
            auto elasticity = [](double v) {
                const auto s = format_shortest(v);
                return Cell::number(v, decimals_of(s));
            };
            t.rows.push_back({Cell::label(r.commodity), elasticity(r.eta_p), elasticity(r.eta_i),
                              Cell::number(*r.published_ratio, 2), Cell::number(*r.published_error, 2),
                              Cell::label(r.source)});
        }
        return t;
    }

    t.column_headers = {"Commodity/Service", "η_p", "η_i", "η_p/η_i", "(η_p/η_i)-1", "Source", "Classification"};
    for (const auto& d : corpus::derive_rows(c, opt.mode, opt.epsilon)) {
        t.rows.push_back({Cell::label(d.record.commodity), Cell::number(d.record.eta_p, 3),
                          Cell::number(d.record.eta_i, 3), Cell::number(d.ratio, 2), Cell::number(d.error, 2),
                          Cell::label(d.record.source),
                          Cell::label(std::string(identity::to_string(d.classification)))});
    }
    t.footnotes.push_back("Rows sorted by perception error, ties by label. Aligned when |error| <= " +
                          format_trimmed(opt.epsilon, 6) + ".");

    if (c.has_published_columns()) {
        DivergenceLog log(t);
        for (const auto& e : corpus::discrepancy_report(c)) {
            const auto* rec = c.find(e.commodity);
            std::string note = opt.mode == DerivationMode::AsPublished
                                   ? "The printed ratio does not follow from the printed elasticities."
                                   : "";
            const double reconciled = corpus::reconciled_eta_i(*rec);
            if (reconciled != rec->eta_i)
                note += (note.empty() ? "" : " ") + std::string("The printed value corresponds to η_i = ") +
                        format_shortest(reconciled) + ".";
            log.add({e.commodity, "η_p/η_i", format_fixed(e.recomputed, 2), format_fixed(e.published, 2), note});
            log.add({e.commodity, "(η_p/η_i)-1", format_fixed(e.recomputed - 1.0, 2),
                     format_fixed(*rec->published_error, 2), note});
        }
    }
    return t;
}

namespace {

struct RegressionLayout {
    std::string id;
    std::string title;
    std::vector<std::string> labels;
    int estimate_precision = 3;
    std::span<const printed::Term> printed_terms;
    const printed::Model* printed_model = nullptr;
};

ReportTable regression_table(const stats::RegressionFit& fit, const RegressionLayout& layout,
                             bool compare)
{
    ReportTable t;
    t.id = layout.id;
    t.title = layout.title;
    t.column_headers = {"Variable", "Estimate", "S.E.", "t-value", "PR (> t)", "Significance"};
    for (std::size_t k = 0; k < fit.coefficient_estimates.size(); ++k) {
        t.rows.push_back({Cell::label(layout.labels[k]),
                          Cell::number(fit.coefficient_estimates[k], layout.estimate_precision),
                          Cell::number(fit.standard_errors[k], 3), Cell::number(fit.t_values[k], 3),
                          Cell::number(fit.p_values[k], p_value_precision(fit.p_values[k])),
                          Cell::label(std::string(stats::significance_code(fit.p_values[k])))});
    }
    t.summary = {
        {"R²", Cell::number(fit.r_squared, 4)},
        {"F", Cell::number(fit.f_statistic, 3)},
        {"p (F)", Cell::number(fit.f_p_value, p_value_precision(fit.f_p_value))},
        {"DF", Cell::number(fit.df_residual, 0)},
        {"n", Cell::number(static_cast<double>(fit.n), 0)},
    };
    t.footnotes.emplace_back(kSignifLegend);
    t.footnotes.push_back("Significance codes are assigned from the computed p-values.");
    for (const auto& w : fit.warnings)
        t.footnotes.push_back("Warning: " + w + ".");

    if (compare && layout.printed_model) {
        DivergenceLog log(t);
        for (std::size_t k = 0; k < layout.printed_terms.size() && k < fit.coefficient_estimates.size(); ++k) {
            const auto& p = layout.printed_terms[k];
            const auto& row = layout.labels[k];
            log.number(fit.coefficient_estimates[k], p.estimate, row, "Estimate");
            log.number(fit.standard_errors[k], p.se, row, "S.E.");
            log.number(fit.t_values[k], p.t, row, "t-value");
            log.number(fit.p_values[k], p.p, row, "PR (> t)");
            std::string note;
            const auto computed = stats::significance_code(fit.p_values[k]);
            if (!p.code.empty())
                note = "Under the printed legend p = " + std::string(p.p) + " carries '" +
                       std::string(computed) + "'.";
            log.code(computed, p.code, row, std::move(note));
        }
        const auto& m = *layout.printed_model;
        log.number(fit.r_squared, m.r_squared, "Model", "R²");
        log.number(fit.f_statistic, m.f, "Model", "F");
        log.number(fit.f_p_value, m.f_p, "Model", "p (F)");
        log.number(fit.df_residual, m.df, "Model", "DF");
    }
    return t;
}

ReportTable printed_regression_table(const RegressionLayout& layout)
{
    ReportTable t;
    t.id = layout.id;
    t.title = layout.title;
    t.column_headers = {"Variable", "Estimate", "S.E.", "t-value", "PR (> t)", "Significance"};
    for (std::size_t k = 0; k < layout.printed_terms.size(); ++k) {
        const auto& p = layout.printed_terms[k];
        t.rows.push_back({Cell::label(layout.labels[k]), printed_cell(p.estimate), printed_cell(p.se),
                          printed_cell(p.t), printed_cell(p.p), Cell::label(std::string(p.code))});
    }
    const auto& m = *layout.printed_model;
    t.summary = {{"R²", printed_cell(m.r_squared)},
                 {"F", printed_cell(m.f)},
                 {"p (F)", printed_cell(m.f_p)},
                 {"DF", printed_cell(m.df)}};
    t.footnotes.emplace_back(kSignifLegend);
    return t;
}

std::string describe_transform(stats::LogPolicy policy, stats::DependentChoice dep)
{
    std::string x;
    std::string y;
    switch (policy) {
    case stats::LogPolicy::AbsLog:
        x = "log(v) = ln|v|";
        y = "ln|η_p/η_i|";
        break;
    case stats::LogPolicy::SignedLog1p:
        x = "log(v) = sign(v) ln(1 + |v|)";
        y = "sign(r) ln(1 + |r|) of r = η_p/η_i";
        break;
    case stats::LogPolicy::DropNonPositive:
        x = "log(v) = ln v, rows with non-positive values dropped";
        y = "ln(η_p/η_i)";
        break;
    }
    if (dep == stats::DependentChoice::RawRatio)
        y = "η_p/η_i (untransformed)";
    return "Transform: " + x + ". Dependent variable: " + y + ".";
}

}  // namespace

stats::RegressionFit quadratic_fit(const Corpus& c, DerivationMode mode)
{
    return stats::ols(stats::polynomial_design(income_elasticities(c, mode), 2),
                      corpus::column(c, Column::EtaP), {"Intercept", "η_i", "η_i^2"});
}

stats::RegressionFit linear_fit(const Corpus& c, DerivationMode mode)
{
    return stats::ols(stats::polynomial_design(income_elasticities(c, mode), 1),
                      corpus::column(c, Column::EtaP), {"Intercept", "η_i"});
}

std::pair<ReportTable, ReportTable> table3_4(const Corpus& c, const ReportOptions& opt)
{
    const std::string suffix = mode_suffix(opt);
    RegressionLayout quad{"table3", "Table 3. Quadratic regression results. Dependent variable: price elasticity" + suffix,
                          {"Intercept", "η_i", "η_i^2"}, 4, printed::kTable3, &printed::kTable3Model};
    RegressionLayout lin{"table4", "Table 4. Linear regression results. Dependent variable: price elasticity" + suffix,
                         {"Intercept", "η_i"}, 3, printed::kTable4, &printed::kTable4Model};
    if (opt.strict_paper) {
        require_embedded(c);
        return {printed_regression_table(quad), printed_regression_table(lin)};
    }
    const bool compare = compares_with_printed(c);
    auto t3 = regression_table(quadratic_fit(c, opt.mode), quad, compare);
    auto t4 = regression_table(linear_fit(c, opt.mode), lin, compare);
    note_reconciled(t3, c, opt.mode);
    note_reconciled(t4, c, opt.mode);
    return {std::move(t3), std::move(t4)};
}

std::pair<ReportTable, ReportTable> table5_6(const Corpus& c, const ReportOptions& opt)
{
    const std::string suffix = mode_suffix(opt);
    RegressionLayout on_income{"table5", "Table 5. Regression results. Dependent variable: η_p/η_i" + suffix,
                               {"Intercept", "log(η_i)"}, 3, printed::kTable5, &printed::kTable5Model};
    RegressionLayout on_price{"table6", "Table 6. Regression results. Dependent variable: η_p/η_i" + suffix,
                              {"Intercept", "log(η_p)"}, 3, printed::kTable6, &printed::kTable6Model};
    if (opt.strict_paper) {
        require_embedded(c);
        return {printed_regression_table(on_income), printed_regression_table(on_price)};
    }
    const auto ratio = ratios(c, opt.mode);
    const auto fit5 = stats::fit_log_ratio_regression(ratio, income_elasticities(c, opt.mode), opt.log_policy,
                                                      opt.dependent, "log(η_i)");
    const auto fit6 = stats::fit_log_ratio_regression(ratio, corpus::column(c, Column::EtaP), opt.log_policy,
                                                      opt.dependent, "log(η_p)");
    const bool compare = compares_with_printed(c);
    auto t5 = regression_table(fit5, on_income, compare);
    auto t6 = regression_table(fit6, on_price, compare);
    for (auto* t : {&t5, &t6}) {
        t->footnotes.push_back(describe_transform(opt.log_policy, opt.dependent));
        if (compare) {
            const auto best = search_log_ratio_interpretations(c, opt.mode).front();
            const bool is_best = best.policy == opt.log_policy && best.dependent == opt.dependent;
            t->footnotes.push_back(
                is_best ? "This interpretation is the closest match to the printed table among all transform "
                          "policies and dependent-variable choices."
                        : "Closest interpretation to the printed table: policy " +
                              std::string(stats::to_string(best.policy)) + ", dependent " +
                              std::string(stats::to_string(best.dependent)) + ".");
        }
    }
    return {std::move(t5), std::move(t6)};
}

std::vector<LogRatioCandidate> search_log_ratio_interpretations(const Corpus& c, DerivationMode mode)
{
    // Targets and acceptance bands from the printed tables.
    constexpr double kSlope5 = -0.531, kR2_5 = 0.4153, kF5 = 19.89;
    constexpr double kSlope6 = 0.241, kR2_6 = 0.0527;

    const auto ratio = ratios(c, mode);
    const auto income = income_elasticities(c, mode);
    const auto price = corpus::column(c, Column::EtaP);

    std::vector<LogRatioCandidate> out;
    for (auto policy : {stats::LogPolicy::AbsLog, stats::LogPolicy::SignedLog1p, stats::LogPolicy::DropNonPositive}) {
        for (auto dep : {stats::DependentChoice::LogRatio, stats::DependentChoice::RawRatio}) {
            LogRatioCandidate cand{policy, dep, std::nullopt, std::nullopt, {}, false, false, 0.0};
            try {
                cand.on_income = stats::fit_log_ratio_regression(ratio, income, policy, dep, "log(η_i)");
                cand.on_price = stats::fit_log_ratio_regression(ratio, price, policy, dep, "log(η_p)");
            } catch (const Error& e) {
                cand.failure = e.what();
            }
            if (cand.on_income && cand.on_price) {
                const auto& a = *cand.on_income;
                const auto& b = *cand.on_price;
                cand.matches_income_table = std::abs(a.coefficient_estimates[1] - kSlope5) <= 0.01 &&
                                            std::abs(a.r_squared - kR2_5) <= 0.01 &&
                                            std::abs(a.f_statistic - kF5) <= 0.5;
                cand.matches_price_table = std::abs(b.coefficient_estimates[1] - kSlope6) <= 0.01 &&
                                           std::abs(b.r_squared - kR2_6) <= 0.01;
                cand.distance = std::abs(a.coefficient_estimates[1] - kSlope5) / 0.01 +
                                std::abs(a.r_squared - kR2_5) / 0.01 + std::abs(a.f_statistic - kF5) / 0.5 +
                                std::abs(b.coefficient_estimates[1] - kSlope6) / 0.01 +
                                std::abs(b.r_squared - kR2_6) / 0.01;
            } else {
                cand.distance = std::numeric_limits<double>::infinity();
            }
            out.push_back(std::move(cand));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LogRatioCandidate& x, const LogRatioCandidate& y) { return x.distance < y.distance; });
    return out;
}

ReportTable log_ratio_search_table(const Corpus& c, const ReportOptions& opt)
{
    ReportTable t;
    t.id = "log-ratio-search";
    t.title = "Log-ratio regressions under each transform interpretation" + mode_suffix(opt);
    t.column_headers = {"Policy", "Dependent", "Slope log(η_i)", "R² (η_i)", "F (η_i)",
                        "Slope log(η_p)", "R² (η_p)", "n used", "Matches printed"};
    for (const auto& cand : search_log_ratio_interpretations(c, opt.mode)) {
        std::vector<Cell> row{Cell::label(std::string(stats::to_string(cand.policy))),
                              Cell::label(std::string(stats::to_string(cand.dependent)))};
        if (cand.on_income && cand.on_price) {
            const auto& a = *cand.on_income;
            const auto& b = *cand.on_price;
            row.push_back(Cell::number(a.coefficient_estimates[1], 3));
            row.push_back(Cell::number(a.r_squared, 4));
            row.push_back(Cell::number(a.f_statistic, 3));
            row.push_back(Cell::number(b.coefficient_estimates[1], 3));
            row.push_back(Cell::number(b.r_squared, 4));
            row.push_back(Cell::label(std::to_string(a.n) + "/" + std::to_string(b.n)));
            std::string match = cand.matches_income_table && cand.matches_price_table ? "both"
                                : cand.matches_income_table                            ? "table 5"
                                : cand.matches_price_table                             ? "table 6"
                                                                                       : "no";
            row.push_back(Cell::label(std::move(match)));
        } else {
            for (int k = 0; k < 6; ++k)
                row.push_back(Cell::label("-"));
            row.push_back(Cell::label("failed: " + cand.failure));
        }
        t.rows.push_back(std::move(row));
    }
    t.footnotes.push_back("Targets: slope -0.531, R² 0.4153, F 19.89 (η_i); slope 0.241, R² 0.0527 (η_p). "
                          "Rows ordered by closeness.");
    return t;
}

ReportTable discrepancy_table(const Corpus& c, double tolerance)
{
    ReportTable t;
    t.id = "discrepancies";
    t.title = "Printed vs recomputed elasticity ratios (tolerance " + format_trimmed(tolerance, 6) + ")";
    t.column_headers = {"Commodity/Service", "Printed ratio", "Recomputed ratio", "Absolute difference"};
    for (const auto& e : corpus::discrepancy_report(c, tolerance))
        t.rows.push_back({Cell::label(e.commodity), Cell::number(e.published, 2), Cell::number(e.recomputed, 2),
                          Cell::number(e.absolute_difference, 3)});
    return t;
}

PlotData figure1(const Corpus& c, const ReportOptions& opt)
{
    PlotData p;
    p.id = "figure1";
    p.title = "Figure 1. Histogram of the ratio of price elasticity to income elasticity" + mode_suffix(opt);
    p.kind = PlotKind::Histogram;
    p.x_label = "η_p/η_i";
    p.y_label = "Frequency";
    const auto values = opt.strict_paper ? (require_embedded(c), corpus::column(c, Column::RatioAsPublished))
                                         : ratios(c, opt.mode);
    Series s;
    s.name = "η_p/η_i";
    s.kind = SeriesKind::Histogram;
    s.bins = stats::histogram(values, opt.bin_width, opt.bin_anchor);
    p.series.push_back(std::move(s));
    p.footnotes.push_back("Bins of width " + format_trimmed(opt.bin_width, 6) + " anchored at " +
                          format_trimmed(opt.bin_anchor, 6) + ", half-open [a, b).");
    return p;
}

PlotData figure2(const Corpus& c, const ReportOptions& opt)
{
    PlotData p;
    p.id = "figure2";
    p.title = "Figure 2. Price and income elasticity of products and services" + mode_suffix(opt);
    p.kind = PlotKind::Scatter;
    p.x_label = "Income elasticity η_i";
    p.y_label = "Price elasticity η_p";

    std::vector<double> x;
    if (opt.strict_paper) {
        require_embedded(c);
        x = corpus::column(c, Column::EtaI);
    } else {
        x = income_elasticities(c, opt.mode);
    }
    const auto y = corpus::column(c, Column::EtaP);

    Series scatter;
    scatter.name = "studies";
    scatter.kind = SeriesKind::Scatter;
    for (std::size_t i = 0; i < x.size(); ++i) {
        scatter.points.push_back({x[i], y[i]});
        scatter.labels.push_back(c.records()[i].commodity);
    }
    p.series.push_back(std::move(scatter));

    if (opt.quadratic_curve) {
        if (opt.strict_paper) {
            p.curve_coefficients = {parse_printed(printed::kTable3[0].estimate),
                                    parse_printed(printed::kTable3[1].estimate),
                                    parse_printed(printed::kTable3[2].estimate)};
        } else {
            p.curve_coefficients = quadratic_fit(c, opt.mode).coefficient_estimates;
        }
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        Series curve;
        curve.name = "quadratic fit";
        curve.kind = SeriesKind::Curve;
        constexpr int kSamples = 100;
        for (int k = 0; k < kSamples; ++k) {
            const double xv = *lo + (*hi - *lo) * k / (kSamples - 1);
            const auto& b = p.curve_coefficients;
            curve.points.push_back({xv, b[0] + xv * (b[1] + xv * b[2])});
        }
        p.series.push_back(std::move(curve));
    }
    return p;
}

std::vector<Artifact> replicate_all(const Corpus& c, const ReportOptions& opt)
{
    std::vector<Artifact> out;
    out.push_back({"table1", table1(c, opt)});
    out.push_back({"table2", table2(c, opt)});
    auto [t3, t4] = table3_4(c, opt);
    out.push_back({"table3", std::move(t3)});
    out.push_back({"table4", std::move(t4)});
    auto [t5, t6] = table5_6(c, opt);
    out.push_back({"table5", std::move(t5)});
    out.push_back({"table6", std::move(t6)});
    if (!opt.strict_paper) {
        out.push_back({"log-ratio-search", log_ratio_search_table(c, opt)});
        if (c.has_published_columns())
            out.push_back({"discrepancies", discrepancy_table(c)});
    }
    out.push_back({"figure1", figure1(c, opt)});
    out.push_back({"figure2", figure2(c, opt)});
    return out;
}

}  // namespace perceprice::report
