#include "kraus/errors.hpp"

namespace kraus {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BadIsometry: return "BadIsometry";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::NotTP: return "NotTP";
    case ErrorCode::CompletionFailure: return "CompletionFailure";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::BadCoefficients: return "BadCoefficients";
    case ErrorCode::NotKinematicallyEquivalent: return "NotKinematicallyEquivalent";
    case ErrorCode::StrategyInapplicable: return "StrategyInapplicable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

} // namespace kraus
