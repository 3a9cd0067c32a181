#include "perceprice/identity.hpp"

#include "perceprice/error.hpp"

#include <cmath>
#include <string>

namespace perceprice::identity {
namespace {

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteInput, std::string(name) + " must be finite");
}

void require_pair(ElasticityPair pair)
{
    require_finite(pair.eta_p, "eta_p");
    require_finite(pair.eta_i, "eta_i");
    if (pair.eta_i == 0.0)
        throw Error(ErrorCode::ZeroIncomeElasticity,
                    "income elasticity is zero; the perception identity is undefined");
}

void require_actual_price(double pa)
{
    require_finite(pa, "pa");
    if (pa <= 0.0)
        throw Error(ErrorCode::NonPositiveActualPrice, "actual price must be positive");
}

void require_reference_price(double pr)
{
    require_finite(pr, "pr");
    if (pr <= 0.0)
        throw Error(ErrorCode::NonPositiveReferencePrice, "reference price must be positive");
}

}  // namespace

double elasticity_ratio(ElasticityPair pair)
{
    require_pair(pair);
    return pair.eta_p / pair.eta_i;
}

double perception_error(ElasticityPair pair)
{
    return elasticity_ratio(pair) - 1.0;
}

Perception classify(double error, double epsilon)
{
    require_finite(error, "error");
    if (std::isnan(epsilon) || epsilon < 0.0)
        throw Error(ErrorCode::NegativeTolerance, "alignment tolerance must be >= 0");
    if (std::abs(error) <= epsilon)
        return Perception::Aligned;
    return error < 0.0 ? Perception::Overestimate : Perception::Underestimate;
}

double relative_price_gap(PricePair prices)
{
    require_actual_price(prices.pa);
    require_finite(prices.pr, "pr");
    return (prices.pa - prices.pr) / prices.pa;
}

PerceptionAssessment assess(ElasticityPair pair, double epsilon, std::optional<PricePair> prices)
{
    PerceptionAssessment out;
    out.ratio = elasticity_ratio(pair);
    out.error = out.ratio - 1.0;
    out.classification = classify(out.error, epsilon);
    out.epsilon = epsilon;
    if (prices)
        out.observed_gap = relative_price_gap(*prices);
    return out;
}

Solution solve_actual_price(double pr, ElasticityPair pair)
{
    require_reference_price(pr);
    const double denom = 2.0 - elasticity_ratio(pair);
    if (denom == 0.0)
        throw Error(ErrorCode::SingularRearrangement,
                    "elasticity ratio equals 2; actual price is unbounded");
    const double pa = pr / denom;
    return {pa, !(pa > 0.0)};
}

Solution solve_reference_price(double pa, ElasticityPair pair)
{
    require_actual_price(pa);
    const double pr = pa * (2.0 - elasticity_ratio(pair));
    return {pr, !(pr > 0.0)};
}

Solution solve_price_elasticity(PricePair prices, double eta_i)
{
    require_actual_price(prices.pa);
    require_reference_price(prices.pr);
    require_finite(eta_i, "eta_i");
    if (eta_i == 0.0)
        throw Error(ErrorCode::ZeroIncomeElasticity,
                    "income elasticity is zero; the perception identity is undefined");
    return {eta_i * (2.0 - prices.pr / prices.pa), false};
}

Solution solve_income_elasticity(PricePair prices, double eta_p)
{
    require_actual_price(prices.pa);
    require_reference_price(prices.pr);
    require_finite(eta_p, "eta_p");
    const double denom = 2.0 - prices.pr / prices.pa;
    if (denom == 0.0)
        throw Error(ErrorCode::SingularRearrangement,
                    "reference price is exactly twice the actual price; income elasticity is unbounded");
    return {eta_p / denom, false};
}

double identity_residual(PricePair prices, ElasticityPair pair)
{
    return relative_price_gap(prices) - perception_error(pair);
}

std::string_view to_string(Perception p) noexcept
{
    switch (p) {
    case Perception::Overestimate: return "Overestimate";
    case Perception::Aligned: return "Aligned";
    case Perception::Underestimate: return "Underestimate";
    }
    return "Aligned";
}

std::string_view to_wire(Perception p) noexcept
{
    switch (p) {
    case Perception::Overestimate: return "overestimate";
    case Perception::Aligned: return "aligned";
    case Perception::Underestimate: return "underestimate";
    }
    return "aligned";
}

}  // namespace perceprice::identity
