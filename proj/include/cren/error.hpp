#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cren {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    NegativeEigenvalue,
    DimensionMismatch,
    NotPSD,
    TraceNotOne,
    NotNormalized,
    NonFinite,
    ParameterOutOfRange,
    NotSquareBipartition,
    RankOutOfRange,
    DegenerateDimension,
    NotTwoQubit,
    NotUnitary,
    NotIsometry,
    RankMismatch,
    ConfigInvalid,
    InternalInconsistency,
    MalformedFile,
    SchemaViolation,
    ValidationFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cren
