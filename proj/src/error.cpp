#include "error.hpp"

namespace livesum {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:    return "invalid_argument";
        case ErrorCode::EmptyConversation:  return "empty_conversation";
        case ErrorCode::EmptySource:        return "empty_source";
        case ErrorCode::EmptyTranscript:    return "empty_transcript";
        case ErrorCode::EmptyCorpus:        return "empty_corpus";
        case ErrorCode::SessionExists:      return "session_exists";
        case ErrorCode::UnknownSession:     return "unknown_session";
        case ErrorCode::SessionEnded:       return "session_ended";
        case ErrorCode::OutOfOrder:         return "out_of_order";
        case ErrorCode::BackendUnavailable: return "backend_unavailable";
        case ErrorCode::EmptyResponse:      return "empty_response";
        case ErrorCode::InvalidExample:     return "invalid_example";
        case ErrorCode::ParseError:         return "parse_error";
        case ErrorCode::ContractViolation:  return "contract_violation";
        case ErrorCode::NotFound:           return "not_found";
        case ErrorCode::IoError:            return "io_error";
        case ErrorCode::BudgetTooSmall:     return "budget_too_small";
    }
    return "unknown";
}

}  // namespace livesum
