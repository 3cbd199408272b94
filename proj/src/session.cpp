#include "session.hpp"

#include <algorithm>

namespace livesum {

namespace {

double window_span(std::span<const Utterance> buffer, const Utterance* extra) {
    double first_start = extra ? extra->t_start : 0.0;
    double last_end = extra ? extra->t_end : 0.0;
    if (!buffer.empty()) {
        first_start = buffer.front().t_start;
        last_end = buffer.front().t_end;
        for (const auto& u : buffer) last_end = std::max(last_end, u.t_end);
        if (extra) last_end = std::max(last_end, extra->t_end);
    }
    return last_end - first_start;
}

}  // namespace

FlushDecision should_flush(std::span<const Utterance> buffer, const Utterance& incoming,
                           const WindowPolicy& policy) {
    const double combined = window_span(buffer, &incoming);
    if (!buffer.empty() && combined > policy.max_span_seconds) {
        return FlushDecision::FlushBeforeAdd;
    }
    if (buffer.size() + 1 >= static_cast<size_t>(policy.max_utterances) &&
        combined <= policy.max_span_seconds) {
        return FlushDecision::FlushAfterAdd;
    }
    return FlushDecision::None;
}

Session::Session(std::string id, WindowPolicy policy)
    : id_(std::move(id)), policy_(policy) {}

SummaryRequest Session::flush_window() {
    SummaryRequest request;
    request.session_id = id_;
    request.scope = Scope::Local;
    request.window_index = windows_emitted_++;
    request.utterances = std::move(buffer_);
    buffer_.clear();
    return request;
}

Expected<std::vector<SummaryRequest>> Session::ingest(const Utterance& utterance) {
    if (ended_) {
        return Error{ErrorCode::SessionEnded, "session " + id_ + " already ended"};
    }
    if (!history_.empty() && utterance.t_start < history_.back().t_start) {
        return Error{ErrorCode::OutOfOrder,
                     "utterance " + utterance.id + " arrives before t_start of " +
                         history_.back().id};
    }

    std::vector<SummaryRequest> requests;
    auto decision = should_flush(buffer_, utterance, policy_);
    if (decision == FlushDecision::FlushBeforeAdd) {
        requests.push_back(flush_window());
        // Re-evaluate against the now-empty buffer; with max_utterances = 1 the
        // incoming turn may close its own window immediately.
        decision = should_flush(buffer_, utterance, policy_);
    }
    buffer_.push_back(utterance);
    history_.push_back(utterance);
    if (decision == FlushDecision::FlushAfterAdd) {
        requests.push_back(flush_window());
    }
    return requests;
}

Expected<std::vector<SummaryRequest>> Session::end() {
    if (ended_) {
        return Error{ErrorCode::SessionEnded, "session " + id_ + " already ended"};
    }
    ended_ = true;
    std::vector<SummaryRequest> requests;
    if (!buffer_.empty()) {
        requests.push_back(flush_window());
    }
    if (!history_.empty()) {
        SummaryRequest global;
        global.session_id = id_;
        global.scope = Scope::Global;
        // The session is done with its history; hand it to the request so an
        // ended session costs only its id.
        global.utterances = std::move(history_);
        history_.clear();
        requests.push_back(std::move(global));
    }
    return requests;
}

SessionEngine::SessionEngine(WindowPolicy default_policy)
    : default_policy_(default_policy) {}

Expected<void> SessionEngine::create_session(const std::string& id) {
    return create_session(id, default_policy_);
}

Expected<void> SessionEngine::create_session(const std::string& id,
                                             const WindowPolicy& policy) {
    std::lock_guard lock(mutex_);
    if (sessions_.contains(id)) {
        return Error{ErrorCode::SessionExists, "session " + id + " already exists"};
    }
    sessions_.emplace(id, Entry{Session(id, policy), std::chrono::steady_clock::now()});
    return {};
}

Expected<std::vector<SummaryRequest>> SessionEngine::ingest(const std::string& id,
                                                            const Utterance& utterance) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        it = sessions_
                 .emplace(id, Entry{Session(id, default_policy_),
                                    std::chrono::steady_clock::now()})
                 .first;
    }
    it->second.last_activity = std::chrono::steady_clock::now();
    return it->second.session.ingest(utterance);
}

Expected<std::vector<SummaryRequest>> SessionEngine::end_session(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        return Error{ErrorCode::UnknownSession, "unknown session " + id};
    }
    it->second.last_activity = std::chrono::steady_clock::now();
    return it->second.session.end();
}

std::vector<SummaryRequest> SessionEngine::end_idle_sessions(
    std::chrono::steady_clock::duration max_idle) {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    std::vector<std::pair<std::chrono::steady_clock::time_point, Session*>> idle;
    for (auto& [id, entry] : sessions_) {
        if (!entry.session.ended() && now - entry.last_activity >= max_idle) {
            idle.emplace_back(entry.last_activity, &entry.session);
        }
    }
    std::sort(idle.begin(), idle.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SummaryRequest> requests;
    for (auto& [ts, session] : idle) {
        auto ended = session->end();
        if (ended) {
            for (auto& r : *ended) requests.push_back(std::move(r));
        }
    }
    return requests;
}

std::vector<SummaryRequest> SessionEngine::end_all() {
    std::lock_guard lock(mutex_);
    std::vector<SummaryRequest> requests;
    for (auto& [id, entry] : sessions_) {
        if (entry.session.ended()) continue;
        auto ended = entry.session.end();
        if (ended) {
            for (auto& r : *ended) requests.push_back(std::move(r));
        }
    }
    return requests;
}

size_t SessionEngine::open_sessions() const {
    std::lock_guard lock(mutex_);
    size_t count = 0;
    for (const auto& [id, entry] : sessions_) {
        if (!entry.session.ended()) ++count;
    }
    return count;
}

}  // namespace livesum
