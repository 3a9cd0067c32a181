#include "perceprice/error.hpp"
#include "perceprice/identity.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace perceprice;
using namespace perceprice::identity;

namespace {

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected perceprice::Error");
    return ErrorCode::BindFailure;
}

}  // namespace

TEST_CASE("elasticity ratio reproduces printed rows")
{
    CHECK(elasticity_ratio({1.84, 0.25}) == doctest::Approx(7.36).epsilon(1e-12));
    CHECK(elasticity_ratio({-1.20, 0.40}) == doctest::Approx(-3.00).epsilon(1e-12));
    for (double x : {-3.5, -0.01, 0.2, 17.0})
        CHECK(elasticity_ratio({x, x}) == 1.0);
    CHECK(code_of([] { elasticity_ratio({1.0, 0.0}); }) == ErrorCode::ZeroIncomeElasticity);
    CHECK(code_of([] { elasticity_ratio({NAN, 1.0}); }) == ErrorCode::NonFiniteInput);
}

TEST_CASE("perception error is ratio minus one")
{
    CHECK(perception_error({-1.20, 0.40}) == doctest::Approx(-4.00).epsilon(1e-12));
    CHECK(perception_error({1.84, 0.25}) == doctest::Approx(6.36).epsilon(1e-12));
    CHECK(perception_error({0.7, 0.7}) == 0.0);
    CHECK(code_of([] { perception_error({1.0, 0.0}); }) == ErrorCode::ZeroIncomeElasticity);
}

TEST_CASE("classify")
{
    CHECK(classify(-0.03, 0.05) == Perception::Aligned);
    CHECK(classify(0.04, 0.05) == Perception::Aligned);
    CHECK(classify(-0.19, 0.05) == Perception::Overestimate);
    CHECK(classify(-4.00, 0.05) == Perception::Overestimate);
    CHECK(classify(6.36, 0.05) == Perception::Underestimate);
    CHECK(classify(0.0, 0.0) == Perception::Aligned);
    CHECK(classify(0.05, 0.05) == Perception::Aligned);
    CHECK(classify(-0.05, 0.05) == Perception::Aligned);
    CHECK(classify(std::nextafter(0.05, 1.0), 0.05) == Perception::Underestimate);
    CHECK(classify(std::nextafter(-0.05, -1.0), 0.05) == Perception::Overestimate);
    CHECK(code_of([] { classify(0.0, -1e-9); }) == ErrorCode::NegativeTolerance);
}

TEST_CASE("relative price gap")
{
    CHECK(relative_price_gap({100, 100}) == 0.0);
    CHECK(relative_price_gap({20, 100}) == doctest::Approx(-4.0));
    CHECK(relative_price_gap({100, 50}) == doctest::Approx(0.5));
    CHECK(code_of([] { relative_price_gap({0, 100}); }) == ErrorCode::NonPositiveActualPrice);
    CHECK(code_of([] { relative_price_gap({-5, 100}); }) == ErrorCode::NonPositiveActualPrice);
}

TEST_CASE("solvers: worked values")
{
    CHECK(solve_actual_price(100, {-1.2, 0.4}).value == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(solve_actual_price(130, {-0.3, 0.5}).value == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(solve_actual_price(100, {0.9, 0.9}).value == 100.0);

    CHECK(solve_reference_price(50, {-0.3, 0.5}).value == doctest::Approx(130.0).epsilon(1e-12));
    CHECK(solve_reference_price(100, {2.5, 2.5}).value == 100.0);
    CHECK(solve_reference_price(20, {-1.2, 0.4}).value == doctest::Approx(100.0).epsilon(1e-12));

    CHECK(solve_price_elasticity({20, 100}, 0.4).value == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(solve_price_elasticity({100, 100}, 0.4).value == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(solve_price_elasticity({50, 130}, 0.5).value == doctest::Approx(-0.3).epsilon(1e-12));

    CHECK(solve_income_elasticity({20, 100}, -1.2).value == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(solve_income_elasticity({100, 100}, 0.4).value == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(solve_income_elasticity({50, 130}, -0.3).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("solvers: singular and non-physical cases")
{
    CHECK(code_of([] { solve_actual_price(100, {2.0, 1.0}); }) == ErrorCode::SingularRearrangement);
    CHECK(code_of([] { solve_income_elasticity({50, 100}, 1.0); }) ==
          ErrorCode::SingularRearrangement);
    CHECK(code_of([] { solve_actual_price(100, {2.0, 0.0}); }) == ErrorCode::ZeroIncomeElasticity);
    CHECK(code_of([] { solve_actual_price(0, {1.0, 1.0}); }) == ErrorCode::NonPositiveReferencePrice);
    CHECK(code_of([] { solve_reference_price(0, {1.0, 1.0}); }) == ErrorCode::NonPositiveActualPrice);
    CHECK(code_of([] { solve_price_elasticity({10, 10}, 0.0); }) == ErrorCode::ZeroIncomeElasticity);
    CHECK(code_of([] { solve_income_elasticity({-1, 10}, 1.0); }) == ErrorCode::NonPositiveActualPrice);

    const auto pa = solve_actual_price(100, {3.0, 1.0});
    CHECK(pa.non_physical);
    CHECK(pa.value == doctest::Approx(-100.0));
    const auto pr = solve_reference_price(100, {2.5, 1.0});
    CHECK(pr.non_physical);
    CHECK(pr.value == doctest::Approx(-50.0));
    CHECK_FALSE(solve_reference_price(100, {-1.2, 0.4}).non_physical);
}

TEST_CASE("identity residual")
{
    CHECK(identity_residual({20, 100}, {-1.2, 0.4}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(identity_residual({100, 100}, {1, 1}) == 0.0);
    CHECK(identity_residual({100, 100}, {-3, 1}) == doctest::Approx(4.0));
}

TEST_CASE("assess bundles ratio, error, class and optional gap")
{
    const auto a = assess({-1.2, 0.4}, 0.05, PricePair{20, 100});
    CHECK(a.ratio == doctest::Approx(-3.0));
    CHECK(a.error == a.ratio - 1.0);
    CHECK(a.classification == Perception::Overestimate);
    REQUIRE(a.observed_gap.has_value());
    CHECK(*a.observed_gap == doctest::Approx(-4.0));
    CHECK_FALSE(assess({1, 1}).observed_gap.has_value());
    CHECK(to_string(Perception::Underestimate) == "Underestimate");
    CHECK(to_wire(Perception::Overestimate) == "overestimate");
}

TEST_CASE("property: ratio scale invariance and antisymmetry")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> eta(-5.0, 5.0);
    std::uniform_real_distribution<double> scale(-100.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double p = eta(rng);
        double q = eta(rng);
        double k = scale(rng);
        if (q == 0.0 || k == 0.0)
            continue;
        const double base = elasticity_ratio({p, q});
        CHECK(elasticity_ratio({k * p, k * q}) ==
              doctest::Approx(base).epsilon(4 * std::numeric_limits<double>::epsilon()));
        CHECK(elasticity_ratio({-p, q}) == -base);
    }
}

TEST_CASE("property: sign semantics")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> eta(-3.0, 3.0);
    std::uniform_real_distribution<double> price(1.0, 500.0);
    for (int i = 0; i < 2000; ++i) {
        const ElasticityPair pair{eta(rng), eta(rng)};
        if (pair.eta_i == 0.0)
            continue;
        const double pr = price(rng);
        const auto pa = solve_actual_price(pr, pair);
        if (pa.non_physical)
            continue;
        const double err = perception_error(pair);
        if (err > 0)
            CHECK(pa.value > pr);
        else if (err < 0)
            CHECK(pa.value < pr);
    }
}
