#include "cren/error.hpp"

namespace cren {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorCode::NotSquareBipartition: return "NotSquareBipartition";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::DegenerateDimension: return "DegenerateDimension";
        case ErrorCode::NotTwoQubit: return "NotTwoQubit";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NotIsometry: return "NotIsometry";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::MalformedFile: return "MalformedFile";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::ValidationFailure: return "ValidationFailure";
    }
    return "Unknown";
}

}  // namespace cren
