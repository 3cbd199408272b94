#pragma once

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace livesum {

// One timestamped speaker turn fragment. Timestamps are seconds relative to
// the conversation start; overlapping turns are legal, only t_start ordering
// is enforced.
struct Utterance {
    std::string id;
    std::optional<std::string> speaker;
    std::string text;
    double t_start = 0.0;
    double t_end = 0.0;

    bool operator==(const Utterance&) const = default;
};

struct Conversation {
    std::string id;
    std::vector<Utterance> utterances;

    bool operator==(const Conversation&) const = default;
};

// Flush rule for the streaming engine: a window closes once it holds
// max_utterances turns, or once adding another turn would stretch it past
// max_span_seconds.
struct WindowPolicy {
    int max_utterances = 4;
    double max_span_seconds = 30.0;
};

enum class Scope { Local, Global };

const char* scope_name(Scope scope);
std::optional<Scope> scope_from_name(std::string_view name);

// A produced summary. Local units cover one contiguous window and carry its
// ordinal; the global unit covers the whole conversation.
struct SummaryUnit {
    Scope scope = Scope::Local;
    std::optional<int> window_index;
    std::vector<std::string> utterance_ids;
    std::string text;
};

// --- validation --------------------------------------------------------------

enum class ConversationDefect {
    DuplicateId,
    NonMonotonicTime,
    EmptyText,
    InvalidTimeRange,
};

struct ValidationFinding {
    ConversationDefect defect;
    size_t utterance_index;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool valid() const { return findings.empty(); }
};

// Lists every violated invariant; an empty report means the conversation is
// well formed. Pure: identical input yields an identical report.
ValidationReport validate_conversation(const Conversation& conversation);

// t_end of the last utterance minus t_start of the first.
Expected<double> conversation_span(const Conversation& conversation);

}  // namespace livesum
