#include "pipeline.hpp"

#include <algorithm>

#include <json.hpp>

namespace livesum::service {

using nlohmann::json;

Expected<PipelineConfig> parse_pipeline_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return Error{ErrorCode::ParseError, "pipeline config is not a JSON object"};
    }
    PipelineConfig cfg;
    cfg.policy.max_utterances = j.value("n_max", cfg.policy.max_utterances);
    cfg.policy.max_span_seconds = j.value("t_max", cfg.policy.max_span_seconds);
    cfg.language = j.value("language", cfg.language);
    cfg.idle_timeout_seconds = j.value("idle_timeout_sec", cfg.idle_timeout_seconds);
    cfg.max_inflight = j.value("max_inflight", cfg.max_inflight);
    if (cfg.policy.max_utterances < 1) {
        return Error{ErrorCode::InvalidArgument, "n_max must be >= 1"};
    }
    if (cfg.policy.max_span_seconds <= 0.0) {
        return Error{ErrorCode::InvalidArgument, "t_max must be > 0"};
    }
    if (cfg.max_inflight < 1) {
        return Error{ErrorCode::InvalidArgument, "max_inflight must be >= 1"};
    }
    if (cfg.idle_timeout_seconds <= 0.0) {
        return Error{ErrorCode::InvalidArgument, "idle_timeout_sec must be > 0"};
    }
    if (j.contains("backend")) {
        auto backend_cfg = backend::parse_backend_config(j["backend"].dump());
        if (!backend_cfg) return backend_cfg.error();
        cfg.backend_config = *backend_cfg;
    }
    return cfg;
}

Pipeline::Pipeline(PipelineConfig config)
    : config_(std::move(config)),
      summarizer_(config_.summarizer ? config_.summarizer
                                     : backend::make_backend(config_.backend_config)),
      engine_(config_.policy) {
    const int workers = std::max(1, config_.max_inflight);
    workers_.reserve(workers);
    for (int i = 0; i < workers; ++i) {
        workers_.emplace_back([this] { worker_loop(); });
    }
    if (config_.enable_idle_reaper) {
        reaper_ = std::thread([this] {
            const auto timeout = std::chrono::duration<double>(config_.idle_timeout_seconds);
            auto tick = std::chrono::duration_cast<std::chrono::milliseconds>(timeout / 4);
            tick = std::clamp(tick, std::chrono::milliseconds(10),
                              std::chrono::milliseconds(1000));
            std::unique_lock lock(reaper_mutex_);
            while (!reaper_stop_) {
                if (reaper_cv_.wait_for(lock, tick, [this] { return reaper_stop_; })) {
                    break;
                }
                lock.unlock();
                run_idle_scan();
                lock.lock();
            }
        });
    }
}

Pipeline::~Pipeline() {
    {
        std::lock_guard lock(reaper_mutex_);
        reaper_stop_ = true;
    }
    reaper_cv_.notify_all();
    if (reaper_.joinable()) reaper_.join();
    {
        std::lock_guard lock(jobs_mutex_);
        stopping_ = true;
        jobs_.clear();
    }
    jobs_cv_.notify_all();
    for (auto& w : workers_) w.join();
}

void Pipeline::worker_loop() {
    for (;;) {
        std::function<void()> job;
        {
            std::unique_lock lock(jobs_mutex_);
            jobs_cv_.wait(lock, [this] { return stopping_ || !jobs_.empty(); });
            if (stopping_ && jobs_.empty()) return;
            job = std::move(jobs_.front());
            jobs_.pop_front();
        }
        job();
    }
}

void Pipeline::submit(std::function<void()> job) {
    {
        std::lock_guard lock(jobs_mutex_);
        jobs_.push_back(std::move(job));
    }
    jobs_cv_.notify_one();
}

void Pipeline::push_out(std::vector<std::string> lines) {
    if (lines.empty()) return;
    {
        std::lock_guard lock(out_mutex_);
        for (auto& line : lines) out_queue_.push_back(std::move(line));
    }
    out_cv_.notify_all();
}

void Pipeline::emit_error(const std::string& session_id, const Error& error,
                          std::optional<int> window_index,
                          std::vector<std::string> utterance_ids) {
    auto event = wire::make_error_event(session_id.empty() ? "-" : session_id,
                                        error_code_name(error.code), error.message,
                                        window_index, std::move(utterance_ids));
    auto line = wire::emit_event(event);
    if (!line) return;
    if (session_id.empty()) {
        // Unattributable (line never parsed): nothing to order against.
        std::vector<std::string> lines;
        lines.push_back(std::move(*line));
        push_out(std::move(lines));
        return;
    }
    // Session-attributed errors ride the same ordered queue as summaries so
    // the outbound stream mirrors feed order per session.
    auto slot = std::make_shared<Slot>();
    {
        std::lock_guard lock(order_mutex_);
        session_out_[session_id].slots.push_back(slot);
        ++pending_slots_;
    }
    std::vector<std::string> lines;
    lines.push_back(std::move(*line));
    finish_slot(session_id, slot, std::move(lines));
}

std::string Pipeline::run_request(const SummaryRequest& request) {
    backend::SummarizeTask task;
    task.scope = request.scope;
    task.language = config_.language;
    for (size_t i = 0; i < request.utterances.size(); ++i) {
        if (i) task.transcript += '\n';
        task.transcript += request.utterances[i].text;
    }
    std::vector<std::string> ids;
    ids.reserve(request.utterances.size());
    for (const auto& u : request.utterances) ids.push_back(u.id);

    auto summary = summarizer_(task);
    if (summary && summary->empty()) {
        summary = Error{ErrorCode::EmptyResponse, "backend returned an empty summary"};
    }
    if (!summary) {
        auto event =
            wire::make_error_event(request.session_id, error_code_name(summary.error().code),
                                   summary.error().message, request.window_index, ids);
        auto line = wire::emit_event(event);
        return line ? *line : std::string();
    }
    SummaryUnit unit;
    unit.scope = request.scope;
    unit.window_index = request.window_index;
    unit.utterance_ids = std::move(ids);
    unit.text = *summary;
    auto line = wire::emit_event(wire::make_summary_event(request.session_id, unit));
    return line ? *line : std::string();
}

void Pipeline::finish_slot(const std::string& session_id,
                           const std::shared_ptr<Slot>& slot,
                           std::vector<std::string> lines) {
    bool released = false;
    {
        // The queue push happens under the order lock: collecting ready lines
        // and enqueueing them must be one atomic step, or two workers could
        // interleave their batches.
        std::lock_guard lock(order_mutex_);
        slot->done = true;
        slot->lines = std::move(lines);
        auto& out = session_out_[session_id];
        std::lock_guard out_lock(out_mutex_);
        while (!out.slots.empty() && out.slots.front()->done) {
            for (auto& l : out.slots.front()->lines) {
                if (!l.empty()) {
                    out_queue_.push_back(std::move(l));
                    released = true;
                }
            }
            out.slots.pop_front();
            --pending_slots_;
        }
    }
    if (released) out_cv_.notify_all();
}

void Pipeline::dispatch_requests(std::vector<SummaryRequest> requests) {
    for (auto& request : requests) {
        auto slot = std::make_shared<Slot>();
        {
            std::lock_guard lock(order_mutex_);
            session_out_[request.session_id].slots.push_back(slot);
            ++pending_slots_;
        }
        auto shared_request = std::make_shared<SummaryRequest>(std::move(request));
        submit([this, slot, shared_request] {
            std::vector<std::string> lines;
            lines.push_back(run_request(*shared_request));
            finish_slot(shared_request->session_id, slot, std::move(lines));
        });
    }
}

void Pipeline::feed_line(const std::string& line) {
    if (line.empty()) return;
    std::lock_guard lock(dispatch_mutex_);
    auto event = wire::parse_event(line);
    if (!event) {
        emit_error("", event.error());
        return;
    }
    if (!wire::is_inbound(event->type)) {
        emit_error(event->session,
                   Error{ErrorCode::ContractViolation,
                         std::string("inbound stream does not accept ") +
                             wire::event_type_name(event->type)});
        return;
    }
    if (event->type == wire::EventType::Utterance) {
        auto requests = engine_.ingest(event->session, *event->utterance);
        if (!requests) {
            emit_error(event->session, requests.error());
            return;
        }
        dispatch_requests(std::move(*requests));
    } else {
        auto requests = engine_.end_session(event->session);
        if (!requests) {
            emit_error(event->session, requests.error());
            return;
        }
        dispatch_requests(std::move(*requests));
    }
}

std::optional<std::string> Pipeline::poll(std::chrono::milliseconds wait) {
    std::unique_lock lock(out_mutex_);
    if (!out_cv_.wait_for(lock, wait, [this] { return !out_queue_.empty(); })) {
        return std::nullopt;
    }
    std::string line = std::move(out_queue_.front());
    out_queue_.pop_front();
    return line;
}

void Pipeline::end_input() {
    std::lock_guard lock(dispatch_mutex_);
    dispatch_requests(engine_.end_all());
}

size_t Pipeline::pending() const {
    std::lock_guard lock(order_mutex_);
    return pending_slots_;
}

void Pipeline::run_idle_scan() {
    std::lock_guard lock(dispatch_mutex_);
    const auto max_idle = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(config_.idle_timeout_seconds));
    dispatch_requests(engine_.end_idle_sessions(max_idle));
}

}  // namespace livesum::service
