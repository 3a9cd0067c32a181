#pragma once

// Price-perception identity:
//
//     (Pa - Pr) / Pa  =  eta_p / eta_i - 1
//
// Pa is the actual market price, Pr the consumer's reference price, eta_p
// and eta_i the price and income elasticities of demand. The left side is
// the relative price gap, the right side the perception error. A negative
// error means consumers overestimate the actual price (Pa < Pr), a
// positive one that they underestimate it (Pa > Pr).
//
// Every function here is pure and thread-safe.

#include <optional>
#include <string_view>

namespace perceprice::identity {

struct ElasticityPair {
    double eta_p = 0.0;  // price elasticity of demand
    double eta_i = 0.0;  // income elasticity of demand
};

struct PricePair {
    double pa = 0.0;  // actual price
    double pr = 0.0;  // reference price
};

enum class Perception { Overestimate, Aligned, Underestimate };

/// Half-width of the band |error| <= epsilon treated as Aligned.
inline constexpr double kDefaultEpsilon = 0.05;

struct PerceptionAssessment {
    double ratio = 0.0;
    double error = 0.0;
    Perception classification = Perception::Aligned;
    double epsilon = kDefaultEpsilon;
    std::optional<double> observed_gap;  // (pa - pr) / pa when prices were supplied
};

/// Result of one of the rearranged solvers. `non_physical` is set when a
/// price comes out <= 0; the identity admits such values algebraically so
/// they are returned rather than rejected.
struct Solution {
    double value = 0.0;
    bool non_physical = false;
};

double elasticity_ratio(ElasticityPair pair);
double perception_error(ElasticityPair pair);
Perception classify(double error, double epsilon = kDefaultEpsilon);
double relative_price_gap(PricePair prices);

PerceptionAssessment assess(ElasticityPair pair, double epsilon = kDefaultEpsilon,
                            std::optional<PricePair> prices = std::nullopt);

/// pa = pr / (2 - eta_p/eta_i)
Solution solve_actual_price(double pr, ElasticityPair pair);
/// pr = pa * (2 - eta_p/eta_i)
Solution solve_reference_price(double pa, ElasticityPair pair);
/// eta_p = eta_i * (2 - pr/pa)
Solution solve_price_elasticity(PricePair prices, double eta_i);
/// eta_i = eta_p / (2 - pr/pa)
Solution solve_income_elasticity(PricePair prices, double eta_p);

/// Left side minus right side; zero for a consistent quadruple.
double identity_residual(PricePair prices, ElasticityPair pair);

std::string_view to_string(Perception p) noexcept;
/// Lower-case form used on the wire ("overestimate", ...).
std::string_view to_wire(Perception p) noexcept;

}  // namespace perceprice::identity
