#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perceprice {

enum class ErrorCode {
    ZeroIncomeElasticity,
    NegativeTolerance,
    NonPositiveActualPrice,
    NonPositiveReferencePrice,
    SingularRearrangement,
    NonFiniteInput,
    FileNotFound,
    SchemaViolation,
    DuplicateCommodity,
    EmptyCorpus,
    MissingPublishedColumn,
    InsufficientData,
    DegenerateSample,
    RankDeficient,
    EmptyAfterTransform,
    ZeroValueUnderAbsLog,
    InvalidBinWidth,
    InvalidDegreesOfFreedom,
    UnsupportedFormat,
    BindFailure,
    InvalidArgument,
};

/// Stable snake_case identifier, also used as the service's `code` field.
std::string_view to_string(ErrorCode code) noexcept;

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace perceprice
