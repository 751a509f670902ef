#pragma once

#include <optional>
#include <string>

namespace gsce {

// Closed set of failure classes a run can end in. The parser and
// interpreter only ever produce ParseError, UnknownFunction,
// RuntimeError or StepLimitExceeded; NoCode and LLMError are assigned
// by the pipeline stages in front of them.
enum class ErrorCategory {
    None,
    NoCode,
    ParseError,
    UnknownFunction,
    RuntimeError,
    StepLimitExceeded,
    LLMError,
};

inline const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::None: return "None";
        case ErrorCategory::NoCode: return "NoCode";
        case ErrorCategory::ParseError: return "ParseError";
        case ErrorCategory::UnknownFunction: return "UnknownFunction";
        case ErrorCategory::RuntimeError: return "RuntimeError";
        case ErrorCategory::StepLimitExceeded: return "StepLimitExceeded";
        case ErrorCategory::LLMError: return "LLMError";
    }
    return "None";
}

inline std::optional<ErrorCategory> error_category_from_string(const std::string& s) {
    if (s == "None") return ErrorCategory::None;
    if (s == "NoCode") return ErrorCategory::NoCode;
    if (s == "ParseError") return ErrorCategory::ParseError;
    if (s == "UnknownFunction") return ErrorCategory::UnknownFunction;
    if (s == "RuntimeError") return ErrorCategory::RuntimeError;
    if (s == "StepLimitExceeded") return ErrorCategory::StepLimitExceeded;
    if (s == "LLMError") return ErrorCategory::LLMError;
    return std::nullopt;
}

// One failed execution yields exactly one of these.
struct ExecError {
    ErrorCategory category = ErrorCategory::None;
    std::string message;
    int line = 0;  // 1-based; 0 when unknown
    int column = 0;
};

}  // namespace gsce
