#include "perceprice/error.hpp"

namespace perceprice {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroIncomeElasticity: return "zero_income_elasticity";
    case ErrorCode::NegativeTolerance: return "negative_tolerance";
    case ErrorCode::NonPositiveActualPrice: return "non_positive_actual_price";
    case ErrorCode::NonPositiveReferencePrice: return "non_positive_reference_price";
    case ErrorCode::SingularRearrangement: return "singular_rearrangement";
    case ErrorCode::NonFiniteInput: return "non_finite_input";
    case ErrorCode::FileNotFound: return "file_not_found";
    case ErrorCode::SchemaViolation: return "schema_violation";
    case ErrorCode::DuplicateCommodity: return "duplicate_commodity";
    case ErrorCode::EmptyCorpus: return "empty_corpus";
    case ErrorCode::MissingPublishedColumn: return "missing_published_column";
    case ErrorCode::InsufficientData: return "insufficient_data";
    case ErrorCode::DegenerateSample: return "degenerate_sample";
    case ErrorCode::RankDeficient: return "rank_deficient";
    case ErrorCode::EmptyAfterTransform: return "empty_after_transform";
    case ErrorCode::ZeroValueUnderAbsLog: return "zero_value_under_abs_log";
    case ErrorCode::InvalidBinWidth: return "invalid_bin_width";
    case ErrorCode::InvalidDegreesOfFreedom: return "invalid_degrees_of_freedom";
    case ErrorCode::UnsupportedFormat: return "unsupported_format";
    case ErrorCode::BindFailure: return "bind_failure";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    }
    return "unknown";
}

}  // namespace perceprice
