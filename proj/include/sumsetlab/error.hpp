#pragma once

#include <stdexcept>
#include <string>

namespace sumsetlab {

// Failure codes surfaced by library operations. Search *failures* (no
// certificate found) are ordinary return values, not errors; these codes
// cover contract violations and exhausted budgets.
enum class ErrorCode {
    UnknownSpec,
    InvalidTable,
    InvalidInput,
    CapExceeded,
    WindowTooSmall,
    IndexOutOfFamily,
    DepthInsufficient,
    RamseyBudgetExceeded,
    DegreeRecoveryFailed,
    OrderTooLarge,
    ExhaustiveInfeasible,
    SchemaMismatch,
};

const char* errorCodeName(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(errorCodeName(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* errorCodeName(ErrorCode c) {
    switch (c) {
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::IndexOutOfFamily: return "IndexOutOfFamily";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::RamseyBudgetExceeded: return "RamseyBudgetExceeded";
    case ErrorCode::DegreeRecoveryFailed: return "DegreeRecoveryFailed";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::ExhaustiveInfeasible: return "ExhaustiveInfeasible";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    }
    return "Error";
}

} // namespace sumsetlab
