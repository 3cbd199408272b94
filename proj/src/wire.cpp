#include "wire.hpp"
#include "jsonutil.hpp"

#include <json.hpp>

namespace livesum::wire {

using nlohmann::json;

const char* event_type_name(EventType type) {
    switch (type) {
        case EventType::Utterance:         return "utterance";
        case EventType::EndOfConversation: return "end_of_conversation";
        case EventType::LocalSummary:      return "local_summary";
        case EventType::GlobalSummary:     return "global_summary";
        case EventType::Error:             return "error";
    }
    return "?";
}

bool is_inbound(EventType type) {
    return type == EventType::Utterance || type == EventType::EndOfConversation;
}

bool is_outbound(EventType type) { return !is_inbound(type); }

WireEvent make_utterance_event(const std::string& session, const Utterance& utterance) {
    WireEvent e;
    e.type = EventType::Utterance;
    e.session = session;
    e.utterance = utterance;
    return e;
}

WireEvent make_end_event(const std::string& session) {
    WireEvent e;
    e.type = EventType::EndOfConversation;
    e.session = session;
    return e;
}

WireEvent make_summary_event(const std::string& session, const SummaryUnit& unit) {
    WireEvent e;
    e.type = unit.scope == Scope::Local ? EventType::LocalSummary
                                        : EventType::GlobalSummary;
    e.session = session;
    e.window_index = unit.window_index;
    e.utterance_ids = unit.utterance_ids;
    e.text = unit.text;
    return e;
}

WireEvent make_error_event(const std::string& session, const std::string& code,
                           const std::string& message, std::optional<int> window_index,
                           std::vector<std::string> utterance_ids) {
    WireEvent e;
    e.type = EventType::Error;
    e.session = session;
    e.code = code;
    e.message = message;
    e.window_index = window_index;
    e.utterance_ids = std::move(utterance_ids);
    return e;
}

namespace {

std::optional<EventType> type_from_name(const std::string& name) {
    for (EventType t : {EventType::Utterance, EventType::EndOfConversation,
                        EventType::LocalSummary, EventType::GlobalSummary,
                        EventType::Error}) {
        if (name == event_type_name(t)) return t;
    }
    return std::nullopt;
}

Error field_error(const std::string& field, const std::string& why) {
    return Error{ErrorCode::ParseError, "field '" + field + "': " + why};
}

Expected<std::string> require_string(const json& j, const char* field,
                                     bool allow_empty = false) {
    if (!j.contains(field)) return field_error(field, "missing");
    if (!j[field].is_string()) return field_error(field, "must be a string");
    auto value = j[field].get<std::string>();
    if (!allow_empty && value.empty()) return field_error(field, "must be non-empty");
    return value;
}

Expected<double> require_number(const json& j, const char* field) {
    if (!j.contains(field)) return field_error(field, "missing");
    if (!j[field].is_number()) return field_error(field, "must be a number");
    return j[field].get<double>();
}

}  // namespace

Expected<WireEvent> parse_event(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return Error{ErrorCode::ParseError, "event line is not a JSON object"};
    }
    auto type_name = require_string(j, "type");
    if (!type_name) return type_name.error();
    const auto type = type_from_name(*type_name);
    if (!type) {
        return Error{ErrorCode::ParseError, "unknown event type: " + *type_name};
    }
    auto session = require_string(j, "session");
    if (!session) return session.error();

    WireEvent event;
    event.type = *type;
    event.session = *session;

    switch (*type) {
        case EventType::Utterance: {
            Utterance u;
            auto id = require_string(j, "id");
            if (!id) return id.error();
            u.id = *id;
            auto text = require_string(j, "text");
            if (!text) return text.error();
            u.text = *text;
            auto t_start = require_number(j, "t_start");
            if (!t_start) return t_start.error();
            auto t_end = require_number(j, "t_end");
            if (!t_end) return t_end.error();
            if (*t_start < 0.0) return field_error("t_start", "must be >= 0");
            if (*t_end < *t_start) return field_error("t_end", "must be >= t_start");
            u.t_start = *t_start;
            u.t_end = *t_end;
            if (j.contains("speaker")) {
                if (!j["speaker"].is_string()) {
                    return field_error("speaker", "must be a string");
                }
                u.speaker = j["speaker"].get<std::string>();
            }
            event.utterance = std::move(u);
            break;
        }
        case EventType::EndOfConversation:
            break;
        case EventType::LocalSummary:
        case EventType::GlobalSummary: {
            if (*type == EventType::LocalSummary) {
                if (!j.contains("window_index") ||
                    !j["window_index"].is_number_integer()) {
                    return field_error("window_index", "missing or not an integer");
                }
                event.window_index = j["window_index"].get<int>();
            }
            if (!j.contains("utterance_ids") || !j["utterance_ids"].is_array()) {
                return field_error("utterance_ids", "missing or not an array");
            }
            for (const auto& id : j["utterance_ids"]) {
                if (!id.is_string()) {
                    return field_error("utterance_ids", "entries must be strings");
                }
                event.utterance_ids.push_back(id.get<std::string>());
            }
            auto text = require_string(j, "text", /*allow_empty=*/true);
            if (!text) return text.error();
            event.text = *text;
            break;
        }
        case EventType::Error: {
            auto code = require_string(j, "code");
            if (!code) return code.error();
            event.code = *code;
            auto message = require_string(j, "message", /*allow_empty=*/true);
            if (!message) return message.error();
            event.message = *message;
            if (j.contains("window_index")) {
                if (!j["window_index"].is_number_integer()) {
                    return field_error("window_index", "must be an integer");
                }
                event.window_index = j["window_index"].get<int>();
            }
            if (j.contains("utterance_ids")) {
                if (!j["utterance_ids"].is_array()) {
                    return field_error("utterance_ids", "must be an array");
                }
                for (const auto& id : j["utterance_ids"]) {
                    if (!id.is_string()) {
                        return field_error("utterance_ids", "entries must be strings");
                    }
                    event.utterance_ids.push_back(id.get<std::string>());
                }
            }
            break;
        }
    }
    return event;
}

Expected<std::string> emit_event(const WireEvent& event) {
    if (!is_outbound(event.type)) {
        return Error{ErrorCode::ContractViolation,
                     std::string("cannot emit inbound event type: ") +
                         event_type_name(event.type)};
    }
    json j;
    j["type"] = event_type_name(event.type);
    j["session"] = event.session;
    switch (event.type) {
        case EventType::LocalSummary:
            j["window_index"] = event.window_index.value_or(0);
            j["utterance_ids"] = event.utterance_ids;
            j["text"] = event.text;
            break;
        case EventType::GlobalSummary:
            j["utterance_ids"] = event.utterance_ids;
            j["text"] = event.text;
            break;
        case EventType::Error:
            j["code"] = event.code;
            j["message"] = event.message;
            if (event.window_index) j["window_index"] = *event.window_index;
            if (!event.utterance_ids.empty()) j["utterance_ids"] = event.utterance_ids;
            break;
        default:
            break;
    }
    return dump_line(j);
}

}  // namespace livesum::wire
