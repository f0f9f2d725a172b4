#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbowcc {

enum class ErrorCode {
    kKindMismatch,
    kEmptyFamily,
    kDomainTooLarge,
    kNoBinaryMds,
    kDimension,
    kTooLarge,
    kLengthMismatch,
    kUnderdetermined,
    kNonuniformCache,
    kRainbowViolation,
    kUndecodable,
    kPdaInvalid,
    kRange,
    kRankPropertyFail,
    kUnsupportedN,
    kBudgetInfeasible,
    kClaimViolation,
    kDivisibility,
    kInfeasiblePiece,
    kSweepTooLarge,
    kParse,
};

std::string_view error_code_name(ErrorCode code);

/// Domain error raised by every module. The code identifies the failed
/// contract; the message carries the offending values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::kKindMismatch: return "KIND_MISMATCH";
    case ErrorCode::kEmptyFamily: return "EMPTY_FAMILY";
    case ErrorCode::kDomainTooLarge: return "DOMAIN_TOO_LARGE";
    case ErrorCode::kNoBinaryMds: return "NO_BINARY_MDS";
    case ErrorCode::kDimension: return "DIMENSION";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kUnderdetermined: return "UNDERDETERMINED";
    case ErrorCode::kNonuniformCache: return "NONUNIFORM_CACHE";
    case ErrorCode::kRainbowViolation: return "RAINBOW_VIOLATION";
    case ErrorCode::kUndecodable: return "UNDECODABLE";
    case ErrorCode::kPdaInvalid: return "PDA_INVALID";
    case ErrorCode::kRange: return "RANGE";
    case ErrorCode::kRankPropertyFail: return "RANK_PROPERTY_FAIL";
    case ErrorCode::kUnsupportedN: return "UNSUPPORTED_N";
    case ErrorCode::kBudgetInfeasible: return "BUDGET_INFEASIBLE";
    case ErrorCode::kClaimViolation: return "CLAIM_VIOLATION";
    case ErrorCode::kDivisibility: return "DIVISIBILITY";
    case ErrorCode::kInfeasiblePiece: return "INFEASIBLE_PIECE";
    case ErrorCode::kSweepTooLarge: return "SWEEP_TOO_LARGE";
    case ErrorCode::kParse: return "PARSE";
    }
    return "UNKNOWN";
}

}  // namespace rainbowcc
