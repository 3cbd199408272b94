#include "backend.hpp"
#include "jsonutil.hpp"

#include <chrono>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rouge.hpp"
#include "unicode.hpp"

namespace livesum::backend {

using nlohmann::json;

const std::string& default_instruction() {
    static const std::string text =
        "Summarize the conversation below. Keep the summary as short as possible "
        "without losing key information, and never longer than one fifth of the "
        "conversation. Keep the medical named entities that appear. Preserve the "
        "intent of the conversation: questions must stay questions. Write naturally.";
    return text;
}

const std::vector<ExamplePair>& default_example_pairs() {
    static const std::vector<ExamplePair> pairs = {
        {"Doctor: How long have you had the cough? Patient: About two weeks, and it "
         "gets worse at night.",
         "Patient reports a two-week cough that worsens at night."},
        {"Doctor: Your blood pressure is a bit high today. Please cut down on salt "
         "and try to walk thirty minutes every day.",
         "Doctor notes elevated blood pressure and advises less salt plus daily "
         "thirty-minute walks."},
    };
    return pairs;
}

Expected<BackendConfig> parse_backend_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return Error{ErrorCode::ParseError, "backend config is not a JSON object"};
    }
    BackendConfig cfg;
    const std::string kind = j.value("kind", "extractive");
    if (kind == "extractive") {
        cfg.kind = BackendKind::Extractive;
    } else if (kind == "remote") {
        cfg.kind = BackendKind::Remote;
    } else {
        return Error{ErrorCode::ParseError, "unknown backend kind: " + kind};
    }
    cfg.endpoint = j.value("endpoint", cfg.endpoint);
    cfg.model = j.value("model", cfg.model);
    cfg.temperature = j.value("temperature", cfg.temperature);
    cfg.top_p = j.value("top_p", cfg.top_p);
    cfg.timeout_seconds = j.value("timeout_sec", cfg.timeout_seconds);
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.retry_backoff_ms = j.value("retry_backoff_ms", cfg.retry_backoff_ms);
    cfg.api_key_env = j.value("api_key_env", cfg.api_key_env);
    cfg.instruction = j.value("instruction", cfg.instruction);
    cfg.required_examples = j.value("required_examples", cfg.required_examples);
    if (j.contains("examples")) {
        if (!j["examples"].is_array()) {
            return Error{ErrorCode::ParseError, "examples must be an array"};
        }
        cfg.example_pairs.clear();
        for (const auto& e : j["examples"]) {
            if (!e.is_object() || !e.contains("transcript") || !e.contains("summary")) {
                return Error{ErrorCode::ParseError,
                             "each example needs transcript and summary"};
            }
            cfg.example_pairs.push_back(
                {e["transcript"].get<std::string>(), e["summary"].get<std::string>()});
        }
    }
    if (cfg.temperature < 0.0) {
        return Error{ErrorCode::InvalidArgument, "temperature must be >= 0"};
    }
    if (cfg.top_p <= 0.0 || cfg.top_p > 1.0) {
        return Error{ErrorCode::InvalidArgument, "top_p must be in (0, 1]"};
    }
    if (cfg.max_retries < 0) {
        return Error{ErrorCode::InvalidArgument, "max_retries must be >= 0"};
    }
    if (cfg.kind == BackendKind::Remote && cfg.endpoint.empty()) {
        return Error{ErrorCode::InvalidArgument, "remote backend needs an endpoint"};
    }
    return cfg;
}

// --- extractive baseline ------------------------------------------------------

namespace {

// Sentences end at terminal punctuation (., ?, !, ...) followed by whitespace
// or end of text. ASR transcripts often carry no punctuation at all, in which
// case the whole transcript is one sentence and the token fallback applies.
std::vector<std::string> split_sentences(std::string_view text) {
    const auto cps = unicode::decode_utf8(text);
    std::vector<std::string> sentences;
    std::string current;
    for (size_t i = 0; i < cps.size(); ++i) {
        const uint32_t cp = cps[i];
        unicode::append_utf8(current, cp);
        const bool terminal = cp == '.' || cp == '?' || cp == '!' || cp == 0x2026;
        const bool at_boundary =
            terminal && (i + 1 == cps.size() || unicode::is_space(cps[i + 1]));
        if (at_boundary) {
            sentences.push_back(current);
            current.clear();
        }
    }
    if (!current.empty()) sentences.push_back(current);
    return sentences;
}

std::string trim_copy(const std::string& s) {
    size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string extractive_summarize(std::string_view transcript) {
    const auto tokens = rouge::tokenize(transcript);
    if (tokens.empty()) return std::string(transcript);
    // floor(0.20 * n) with a floor of one token.
    const size_t budget = std::max<size_t>(1, tokens.size() / 5);

    std::vector<std::string> kept;
    size_t used = 0;
    for (const auto& sentence : split_sentences(transcript)) {
        const size_t cost = rouge::token_count(sentence);
        if (cost == 0) continue;
        if (used + cost > budget) break;
        kept.push_back(trim_copy(sentence));
        used += cost;
    }
    if (!kept.empty()) return join(kept, " ");

    std::vector<std::string> head(tokens.begin(), tokens.begin() + budget);
    return join(head, " ");
}

// --- prompt -------------------------------------------------------------------

namespace {

struct PromptParts {
    std::string instruction;
    std::string body;
};

Expected<PromptParts> build_prompt_parts(const SummarizeTask& task,
                                         const BackendConfig& config) {
    const auto& examples = config.example_pairs;
    if (examples.size() != config.required_examples) {
        std::ostringstream msg;
        msg << "expected " << config.required_examples << " example pairs, got "
            << examples.size();
        return Error{ErrorCode::InvalidExample, msg.str()};
    }
    for (const auto& e : examples) {
        if (e.transcript.empty()) {
            return Error{ErrorCode::InvalidExample, "example transcript is empty"};
        }
    }
    PromptParts parts;
    parts.instruction =
        config.instruction.empty() ? default_instruction() : config.instruction;
    std::ostringstream body;
    for (size_t i = 0; i < examples.size(); ++i) {
        body << "Example " << (i + 1) << ":\n"
             << "Conversation:\n"
             << examples[i].transcript << "\n"
             << "Summary:\n"
             << examples[i].summary << "\n\n";
    }
    body << "Conversation:\n" << task.transcript << "\nSummary:";
    parts.body = body.str();
    return parts;
}

}  // namespace

Expected<std::string> build_prompt(const SummarizeTask& task, const BackendConfig& config) {
    auto parts = build_prompt_parts(task, config);
    if (!parts) return parts.error();
    return parts->instruction + "\n\n" + parts->body;
}

// --- remote client ------------------------------------------------------------

namespace {

struct ParsedEndpoint {
    std::string host_port;  // scheme://host:port
    std::string path;
};

Expected<ParsedEndpoint> parse_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        return Error{ErrorCode::InvalidArgument, "endpoint must include a scheme"};
    }
    const auto path_start = endpoint.find('/', scheme_end + 3);
    ParsedEndpoint parsed;
    if (path_start == std::string::npos) {
        parsed.host_port = endpoint;
        parsed.path = "/v1/chat/completions";
    } else {
        parsed.host_port = endpoint.substr(0, path_start);
        parsed.path = endpoint.substr(path_start);
    }
    return parsed;
}

Expected<std::string> remote_summarize(const SummarizeTask& task,
                                       const BackendConfig& config) {
    auto parts = build_prompt_parts(task, config);
    if (!parts) return parts.error();
    auto endpoint = parse_endpoint(config.endpoint);
    if (!endpoint) return endpoint.error();

    json request = {
        {"model", config.model},
        {"temperature", config.temperature},
        {"top_p", config.top_p},
        {"messages",
         {{{"role", "system"}, {"content", parts->instruction}},
          {{"role", "user"}, {"content", parts->body}}}},
    };
    const std::string body = dump_line(request);

    httplib::Client client(endpoint->host_port);
    const auto timeout =
        std::chrono::milliseconds(static_cast<long>(config.timeout_seconds * 1000.0));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (!config.api_key_env.empty()) {
        if (const char* key = std::getenv(config.api_key_env.c_str())) {
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(config.retry_backoff_ms * attempt));
        }
        auto res = client.Post(endpoint->path, headers, body, "application/json");
        if (!res) {
            last_failure = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_failure = "http status " + std::to_string(res->status);
            continue;
        }
        json reply = json::parse(res->body, nullptr, false);
        if (reply.is_discarded()) {
            return Error{ErrorCode::EmptyResponse, "backend reply is not JSON"};
        }
        std::string content;
        if (reply.contains("choices") && reply["choices"].is_array() &&
            !reply["choices"].empty()) {
            const auto& choice = reply["choices"][0];
            if (choice.contains("message") && choice["message"].contains("content")) {
                content = choice["message"]["content"].get<std::string>();
            }
        }
        if (content.empty()) {
            return Error{ErrorCode::EmptyResponse, "backend reply has no content"};
        }
        return content;
    }
    return Error{ErrorCode::BackendUnavailable,
                 "gave up after " + std::to_string(config.max_retries + 1) +
                     " attempts: " + last_failure};
}

}  // namespace

Expected<std::string> summarize(const SummarizeTask& task, const BackendConfig& config) {
    if (task.transcript.empty()) {
        return Error{ErrorCode::EmptyTranscript, "task transcript is empty"};
    }
    switch (config.kind) {
        case BackendKind::Extractive:
            return extractive_summarize(task.transcript);
        case BackendKind::Remote:
            return remote_summarize(task, config);
    }
    return Error{ErrorCode::InvalidArgument, "unknown backend kind"};
}

SummarizeFn make_backend(const BackendConfig& config) {
    return [config](const SummarizeTask& task) { return summarize(task, config); };
}

}  // namespace livesum::backend
