#include "txdiag/error.hpp"

namespace txdiag {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnknownBlock: return "UnknownBlock";
        case ErrorCode::UnknownTest: return "UnknownTest";
        case ErrorCode::UnknownMonitor: return "UnknownMonitor";
        case ErrorCode::InvalidPath: return "InvalidPath";
        case ErrorCode::MonitorOffPath: return "MonitorOffPath";
        case ErrorCode::DuplicateRow: return "DuplicateRow";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::ProviderLengthMismatch: return "ProviderLengthMismatch";
        case ErrorCode::EmptyModel: return "EmptyModel";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::EquivalentColumns: return "EquivalentColumns";
        case ErrorCode::UncoverableArc: return "UncoverableArc";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Format: return "Format";
    }
    return "Unknown";
}

}  // namespace txdiag
