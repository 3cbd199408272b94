#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "backend.hpp"
#include "error.hpp"
#include "session.hpp"
#include "wire.hpp"

namespace livesum::service {

struct PipelineConfig {
    WindowPolicy policy;
    backend::BackendConfig backend_config;
    // When set, used instead of backend_config (tests inject mocks here).
    backend::SummarizeFn summarizer;
    std::string language = "vi";
    double idle_timeout_seconds = 600.0;
    int max_inflight = 4;
    bool enable_idle_reaper = true;
};

Expected<PipelineConfig> parse_pipeline_config(const std::string& json_text);

// Lines in, lines out. Inbound events drive the session engine; every
// resulting SummaryRequest runs on a worker and its outbound line is
// released strictly in per-session request order (window order, global
// last), so one slow backend call never reorders a session and never blocks
// another session. A failed backend call becomes an error event for that
// window and the session keeps going.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig config);
    ~Pipeline();

    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;

    // Parses and dispatches one inbound line. Outbound lines (summaries or
    // errors) become available via poll().
    void feed_line(const std::string& line);

    // Next outbound line, waiting up to `wait` for one to appear.
    std::optional<std::string> poll(std::chrono::milliseconds wait);

    // Signals end of input: every open session is ended and flushed.
    void end_input();

    // Summary slots dispatched but not yet released to the output queue.
    size_t pending() const;

    // Runs one idle-timeout scan now (the reaper thread does this
    // periodically when enabled).
    void run_idle_scan();

    const PipelineConfig& config() const { return config_; }

private:
    struct Slot {
        bool done = false;
        std::vector<std::string> lines;
    };
    struct SessionOut {
        std::deque<std::shared_ptr<Slot>> slots;
    };

    void dispatch_requests(std::vector<SummaryRequest> requests);
    void finish_slot(const std::string& session_id, const std::shared_ptr<Slot>& slot,
                     std::vector<std::string> lines);
    void push_out(std::vector<std::string> lines);
    void emit_error(const std::string& session_id, const Error& error,
                    std::optional<int> window_index = std::nullopt,
                    std::vector<std::string> utterance_ids = {});
    std::string run_request(const SummaryRequest& request);

    // worker pool
    void worker_loop();
    void submit(std::function<void()> job);

    PipelineConfig config_;
    backend::SummarizeFn summarizer_;
    SessionEngine engine_;

    mutable std::mutex dispatch_mutex_;  // serializes engine ops + slot creation
    mutable std::mutex order_mutex_;     // guards per-session slot queues
    std::map<std::string, SessionOut> session_out_;
    size_t pending_slots_ = 0;

    std::mutex out_mutex_;
    std::condition_variable out_cv_;
    std::deque<std::string> out_queue_;

    std::mutex jobs_mutex_;
    std::condition_variable jobs_cv_;
    std::deque<std::function<void()>> jobs_;
    bool stopping_ = false;
    std::vector<std::thread> workers_;

    std::thread reaper_;
    std::condition_variable reaper_cv_;
    std::mutex reaper_mutex_;
    bool reaper_stop_ = false;
};

}  // namespace livesum::service
