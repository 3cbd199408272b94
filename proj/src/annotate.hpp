#pragma once

#include <string>
#include <vector>

#include "backend.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "session.hpp"
#include "simulate.hpp"

namespace livesum::service {

// Offline windowing of a whole conversation: the same flush rule the
// streaming engine applies, replayed over a finished transcript. Returns the
// local windows followed by the global request.
std::vector<SummaryRequest> window_conversation(const Conversation& conversation,
                                                const WindowPolicy& policy);

// Simulated-data annotation: turns one source document into spoken-style
// corpus samples by simulating a conversation, windowing it, and letting the
// backend write a summary per window plus one for the whole conversation.
Expected<std::vector<corpus::CorpusSample>> annotate_source(
    std::string_view source_text, const sim::SimConfig& sim_config,
    const WindowPolicy& policy, const backend::SummarizeFn& summarizer,
    corpus::Split split, const std::string& id_prefix);

}  // namespace livesum::service
