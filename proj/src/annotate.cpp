#include "annotate.hpp"

namespace livesum::service {

std::vector<SummaryRequest> window_conversation(const Conversation& conversation,
                                                const WindowPolicy& policy) {
    Session session(conversation.id, policy);
    std::vector<SummaryRequest> requests;
    for (const auto& utterance : conversation.utterances) {
        auto step = session.ingest(utterance);
        if (!step) continue;  // replay of a valid conversation cannot fail
        for (auto& r : *step) requests.push_back(std::move(r));
    }
    auto final_step = session.end();
    if (final_step) {
        for (auto& r : *final_step) requests.push_back(std::move(r));
    }
    return requests;
}

Expected<std::vector<corpus::CorpusSample>> annotate_source(
    std::string_view source_text, const sim::SimConfig& sim_config,
    const WindowPolicy& policy, const backend::SummarizeFn& summarizer,
    corpus::Split split, const std::string& id_prefix) {
    auto conversation = sim::simulate_conversation(source_text, sim_config, id_prefix);
    if (!conversation) return conversation.error();

    std::vector<corpus::CorpusSample> samples;
    for (const auto& request : window_conversation(*conversation, policy)) {
        backend::SummarizeTask task;
        task.scope = request.scope;
        for (size_t i = 0; i < request.utterances.size(); ++i) {
            if (i) task.transcript += '\n';
            task.transcript += request.utterances[i].text;
        }
        auto summary = summarizer(task);
        if (!summary) return summary.error();

        corpus::CorpusSample sample;
        sample.id = id_prefix +
                    (request.scope == Scope::Local
                         ? "-w" + std::to_string(request.window_index.value_or(0))
                         : "-global");
        sample.split = split;
        sample.scope = request.scope;
        sample.source = corpus::Source::Sim;
        sample.transcript = std::move(task.transcript);
        sample.summary = std::move(*summary);
        samples.push_back(std::move(sample));
    }
    return samples;
}

}  // namespace livesum::service
