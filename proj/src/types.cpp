#include "types.hpp"

#include <unordered_set>

#include "rouge.hpp"

namespace livesum {

const char* scope_name(Scope scope) {
    return scope == Scope::Local ? "local" : "global";
}

std::optional<Scope> scope_from_name(std::string_view name) {
    if (name == "local") return Scope::Local;
    if (name == "global") return Scope::Global;
    return std::nullopt;
}

ValidationReport validate_conversation(const Conversation& conversation) {
    ValidationReport report;
    std::unordered_set<std::string> seen_ids;
    double prev_start = 0.0;
    for (size_t i = 0; i < conversation.utterances.size(); ++i) {
        const Utterance& u = conversation.utterances[i];
        if (!seen_ids.insert(u.id).second) {
            report.findings.push_back(
                {ConversationDefect::DuplicateId, i, "duplicate utterance id: " + u.id});
        }
        if (i > 0 && u.t_start < prev_start) {
            report.findings.push_back({ConversationDefect::NonMonotonicTime, i,
                                       "t_start decreases at utterance " + u.id});
        }
        if (u.t_start < 0.0 || u.t_end < u.t_start) {
            report.findings.push_back({ConversationDefect::InvalidTimeRange, i,
                                       "bad time range for utterance " + u.id});
        }
        if (rouge::tokenize(u.text).empty()) {
            report.findings.push_back(
                {ConversationDefect::EmptyText, i, "no tokens in utterance " + u.id});
        }
        prev_start = u.t_start;
    }
    return report;
}

Expected<double> conversation_span(const Conversation& conversation) {
    if (conversation.utterances.empty()) {
        return Error{ErrorCode::EmptyConversation, "conversation has no utterances"};
    }
    return conversation.utterances.back().t_end - conversation.utterances.front().t_start;
}

}  // namespace livesum
