#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "types.hpp"

namespace livesum::wire {

// One protocol event, one JSON object per line. Clients send utterance and
// end_of_conversation; the service answers with local_summary, global_summary
// and error events.
enum class EventType {
    Utterance,
    EndOfConversation,
    LocalSummary,
    GlobalSummary,
    Error,
};

const char* event_type_name(EventType type);
bool is_inbound(EventType type);
bool is_outbound(EventType type);

struct WireEvent {
    EventType type = EventType::Utterance;
    std::string session;

    // utterance payload
    std::optional<Utterance> utterance;

    // summary payload
    std::optional<int> window_index;
    std::vector<std::string> utterance_ids;
    std::string text;

    // error payload
    std::string code;
    std::string message;

    bool operator==(const WireEvent&) const = default;
};

WireEvent make_utterance_event(const std::string& session, const Utterance& utterance);
WireEvent make_end_event(const std::string& session);
WireEvent make_summary_event(const std::string& session, const SummaryUnit& unit);
WireEvent make_error_event(const std::string& session, const std::string& code,
                           const std::string& message,
                           std::optional<int> window_index = std::nullopt,
                           std::vector<std::string> utterance_ids = {});

// Strict: unknown types, missing required fields, and malformed payloads are
// rejected with the offending field named in the error.
Expected<WireEvent> parse_event(const std::string& line);

// Outbound events only; emit followed by parse is the identity.
Expected<std::string> emit_event(const WireEvent& event);

}  // namespace livesum::wire
