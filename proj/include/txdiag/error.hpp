#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace txdiag {

enum class ErrorCode {
    InvalidGraph,
    UnknownNode,
    UnknownBlock,
    UnknownTest,
    UnknownMonitor,
    InvalidPath,
    MonitorOffPath,
    DuplicateRow,
    LengthMismatch,
    SearchBudgetExceeded,
    ProviderLengthMismatch,
    EmptyModel,
    ZeroDenominator,
    EquivalentColumns,
    UncoverableArc,
    InvalidArgument,
    Format,
};

std::string_view to_string(ErrorCode code);

// All domain failures raised by the library carry one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace txdiag
