#pragma once

#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "types.hpp"

namespace livesum {

// What to summarize: one flushed local window, or the whole history at end
// of conversation.
struct SummaryRequest {
    std::string session_id;
    Scope scope = Scope::Local;
    std::optional<int> window_index;  // set for local requests only
    std::vector<Utterance> utterances;
};

enum class FlushDecision { None, FlushBeforeAdd, FlushAfterAdd };

// Pure flush rule. FlushAfterAdd: adding `incoming` fills the window to
// max_utterances and the combined span still fits. FlushBeforeAdd: adding
// `incoming` would stretch a non-empty window past max_span_seconds, so the
// current window closes first and `incoming` starts the next one. The window
// span is measured from the first t_start to the largest t_end, so an
// overlapping long turn cannot smuggle extra utterances under the cap.
FlushDecision should_flush(std::span<const Utterance> buffer, const Utterance& incoming,
                           const WindowPolicy& policy);

// Per-conversation streaming state. Buffers utterances, closes windows per
// the policy, and produces exactly one global request when ended. A single
// utterance longer than max_span_seconds forms its own window; it cannot be
// split.
class Session {
public:
    Session(std::string id, WindowPolicy policy);

    // Returns the local SummaryRequests triggered by this utterance (usually
    // none or one; two when a time-cap flush immediately precedes a count
    // flush under max_utterances = 1).
    Expected<std::vector<SummaryRequest>> ingest(const Utterance& utterance);

    // Flushes any residual window, then emits the global request covering the
    // full history. A session that never saw an utterance ends silently.
    Expected<std::vector<SummaryRequest>> end();

    const std::string& id() const { return id_; }
    const WindowPolicy& policy() const { return policy_; }
    bool ended() const { return ended_; }
    int windows_emitted() const { return windows_emitted_; }
    // Empty once the session has ended (the global request takes it).
    const std::vector<Utterance>& history() const { return history_; }
    size_t buffered() const { return buffer_.size(); }

private:
    SummaryRequest flush_window();

    std::string id_;
    WindowPolicy policy_;
    std::vector<Utterance> buffer_;
    std::vector<Utterance> history_;
    int windows_emitted_ = 0;
    bool ended_ = false;
};

// Keyed session registry. All operations are serialized per engine; backend
// calls never run under this lock, so sessions only contend for microseconds.
class SessionEngine {
public:
    explicit SessionEngine(WindowPolicy default_policy = {});

    Expected<void> create_session(const std::string& id);
    Expected<void> create_session(const std::string& id, const WindowPolicy& policy);

    // Creates the session on first use (the wire protocol has no explicit
    // session-open event).
    Expected<std::vector<SummaryRequest>> ingest(const std::string& id,
                                                 const Utterance& utterance);
    Expected<std::vector<SummaryRequest>> end_session(const std::string& id);

    // Ends every open session idle for at least `max_idle` and returns their
    // requests, oldest first.
    std::vector<SummaryRequest> end_idle_sessions(std::chrono::steady_clock::duration max_idle);

    // Ends every open session (used when the input stream closes).
    std::vector<SummaryRequest> end_all();

    size_t open_sessions() const;

private:
    struct Entry {
        Session session;
        std::chrono::steady_clock::time_point last_activity;
    };

    mutable std::mutex mutex_;
    WindowPolicy default_policy_;
    std::map<std::string, Entry> sessions_;
};

}  // namespace livesum
