#include "perceprice/service.hpp"

#include "perceprice/error.hpp"
#include "perceprice/identity.hpp"
#include "perceprice/report/render.hpp"
#include "perceprice/report/report.hpp"

#include <json.hpp>

#include <cmath>
#include <optional>

namespace perceprice::service {

using nlohmann::json;

namespace {

// Request-level failure carrying its HTTP status.
struct ApiFailure {
    int status;
    std::string code;
    std::string message;
    std::string field;
};

Response reply(int status, const json& body)
{
    return {status, body.dump()};
}

Response failure(const ApiFailure& f)
{
    json body = {{"code", f.code}, {"message", f.message}};
    body["field"] = f.field.empty() ? json(nullptr) : json(f.field);
    return reply(f.status, body);
}

ApiFailure invalid(std::string field, std::string message)
{
    return {422, "validation_failed", std::move(message), std::move(field)};
}

std::string field_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ZeroIncomeElasticity: return "eta_i";
    case ErrorCode::NegativeTolerance: return "epsilon";
    case ErrorCode::NonPositiveActualPrice: return "pa";
    case ErrorCode::NonPositiveReferencePrice: return "pr";
    case ErrorCode::InvalidBinWidth: return "bin_width";
    default: return {};
    }
}

json parse_object(std::string_view body)
{
    json j = json::parse(body.begin(), body.end(), nullptr, false);
    if (j.is_discarded())
        throw ApiFailure{400, "malformed_json", "request body is not valid JSON", ""};
    if (!j.is_object())
        throw invalid("", "request body must be a JSON object");
    return j;
}

std::optional<double> number_field(const json& j, const std::string& name, bool required)
{
    const auto it = j.find(name);
    if (it == j.end() || it->is_null()) {
        if (required)
            throw invalid(name, "missing required number '" + name + "'");
        return std::nullopt;
    }
    if (!it->is_number())
        throw invalid(name, "'" + name + "' must be a number");
    return it->get<double>();
}

corpus::DerivationMode mode_param(const Query& q, corpus::DerivationMode fallback)
{
    const auto it = q.find("mode");
    if (it == q.end() || it->second.empty())
        return fallback;
    if (it->second == "recomputed")
        return corpus::DerivationMode::Recomputed;
    if (it->second == "as_published" || it->second == "as-published")
        return corpus::DerivationMode::AsPublished;
    throw invalid("mode", "mode must be 'recomputed' or 'as_published'");
}

stats::LogPolicy policy_param(const Query& q)
{
    const auto it = q.find("log_policy");
    if (it == q.end() || it->second.empty() || it->second == "abs")
        return stats::LogPolicy::AbsLog;
    if (it->second == "signed-log1p" || it->second == "signed_log1p")
        return stats::LogPolicy::SignedLog1p;
    if (it->second == "drop")
        return stats::LogPolicy::DropNonPositive;
    throw invalid("log_policy", "log_policy must be 'abs', 'signed-log1p' or 'drop'");
}

json assess(const json& req)
{
    const double eta_p = *number_field(req, "eta_p", true);
    const double eta_i = *number_field(req, "eta_i", true);
    const double eps = number_field(req, "epsilon", false).value_or(identity::kDefaultEpsilon);
    const auto pa = number_field(req, "pa", false);
    const auto pr = number_field(req, "pr", false);
    if (pa.has_value() != pr.has_value())
        throw invalid(pa ? "pr" : "pa", "'pa' and 'pr' must be given together");
    std::optional<identity::PricePair> prices;
    if (pa)
        prices = identity::PricePair{*pa, *pr};
    const auto a = identity::assess({eta_p, eta_i}, eps, prices);
    json out = {{"ratio", a.ratio}, {"error", a.error},
                {"classification", identity::to_wire(a.classification)}};
    if (a.observed_gap)
        out["observed_gap"] = *a.observed_gap;
    return out;
}

json solve(const json& req)
{
    const auto it = req.find("solve_for");
    if (it == req.end() || !it->is_string())
        throw invalid("solve_for", "'solve_for' must be one of pa, pr, eta_p, eta_i");
    const std::string target = it->get<std::string>();
    identity::Solution s;
    std::string warning;
    if (target == "pa") {
        s = identity::solve_actual_price(*number_field(req, "pr", true),
                                         {*number_field(req, "eta_p", true), *number_field(req, "eta_i", true)});
        warning = "solved actual price is not positive";
    } else if (target == "pr") {
        s = identity::solve_reference_price(*number_field(req, "pa", true),
                                            {*number_field(req, "eta_p", true), *number_field(req, "eta_i", true)});
        warning = "solved reference price is not positive";
    } else if (target == "eta_p") {
        s = identity::solve_price_elasticity({*number_field(req, "pa", true), *number_field(req, "pr", true)},
                                             *number_field(req, "eta_i", true));
    } else if (target == "eta_i") {
        s = identity::solve_income_elasticity({*number_field(req, "pa", true), *number_field(req, "pr", true)},
                                              *number_field(req, "eta_p", true));
    } else {
        throw invalid("solve_for", "'solve_for' must be one of pa, pr, eta_p, eta_i");
    }
    json warnings = json::array();
    if (s.non_physical)
        warnings.push_back("non_physical: " + warning);
    return {{target, s.value}, {"warnings", warnings}};
}

json dataset(const corpus::Corpus& c, corpus::DerivationMode mode)
{
    json records = json::array();
    for (const auto& r : c.records()) {
        const double ratio = identity::elasticity_ratio(r.pair());
        json row = {{"commodity", r.commodity},
                    {"eta_p", r.eta_p},
                    {"eta_i", r.eta_i},
                    {"source", r.source},
                    {"recomputed_ratio", ratio},
                    {"recomputed_error", ratio - 1.0},
                    {"published_ratio", r.published_ratio ? json(*r.published_ratio) : json(nullptr)},
                    {"published_error", r.published_error ? json(*r.published_error) : json(nullptr)}};
        records.push_back(std::move(row));
    }
    // Mode-specific derived values, looked up by label.
    for (const auto& d : corpus::derive_rows(c, mode)) {
        for (auto& row : records) {
            if (row["commodity"] == d.record.commodity) {
                row["ratio"] = d.ratio;
                row["error"] = d.error;
                row["classification"] = identity::to_wire(d.classification);
            }
        }
    }
    return {{"mode", mode == corpus::DerivationMode::Recomputed ? "recomputed" : "as_published"},
            {"count", records.size()},
            {"records", records}};
}

json replicate(const corpus::Corpus& c, std::string_view which, const Query& q)
{
    report::ReportOptions opt;
    opt.mode = mode_param(q, corpus::DerivationMode::AsPublished);
    opt.log_policy = policy_param(q);
    if (which == "table1")
        return report::to_json(report::table1(c, opt));
    if (which == "table2")
        return report::to_json(report::table2(c, opt));
    if (which == "table3" || which == "table4") {
        auto [t3, t4] = report::table3_4(c, opt);
        return report::to_json(which == "table3" ? t3 : t4);
    }
    auto [t5, t6] = report::table5_6(c, opt);
    return report::to_json(which == "table5" ? t5 : t6);
}

bool is_table(std::string_view s)
{
    return s.size() == 6 && s.substr(0, 5) == "table" && s[5] >= '1' && s[5] <= '6';
}

constexpr std::string_view kReplicate = "/v1/replicate/";
constexpr std::string_view kFigures = "/v1/figures/";

}  // namespace

Api::Api(corpus::Corpus corpus) : corpus_(std::move(corpus)) {}

Response Api::handle(std::string_view method, std::string_view path, const Query& query,
                     std::string_view body) const
{
    try {
        if (method == "OPTIONS")
            return {204, {}};
        if (method == "GET") {
            if (path == "/health")
                return reply(200, {{"status", "ok"}});
            if (path == "/v1/dataset")
                return reply(200, dataset(corpus_, mode_param(query, corpus::DerivationMode::Recomputed)));
            if (path.substr(0, kReplicate.size()) == kReplicate && is_table(path.substr(kReplicate.size())))
                return reply(200, replicate(corpus_, path.substr(kReplicate.size()), query));
            if (path.substr(0, kFigures.size()) == kFigures) {
                const auto which = path.substr(kFigures.size());
                report::ReportOptions opt;
                opt.mode = mode_param(query, corpus::DerivationMode::AsPublished);
                if (which == "figure1")
                    return reply(200, report::to_json(report::figure1(corpus_, opt)));
                if (which == "figure2")
                    return reply(200, report::to_json(report::figure2(corpus_, opt)));
            }
        } else if (method == "POST") {
            if (path == "/v1/perception/assess")
                return reply(200, assess(parse_object(body)));
            if (path == "/v1/perception/solve")
                return reply(200, solve(parse_object(body)));
        }
        return failure({404, "not_found", "no route for " + std::string(method) + " " + std::string(path), ""});
    } catch (const ApiFailure& f) {
        return failure(f);
    } catch (const Error& e) {
        return failure({422, std::string(to_string(e.code())), e.what(), field_for(e.code())});
    } catch (const std::exception& e) {
        return failure({500, "internal_error", e.what(), ""});
    }
}

}  // namespace perceprice::service
