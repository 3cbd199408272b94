#pragma once

#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "types.hpp"

namespace livesum::backend {

struct SummarizeTask {
    Scope scope = Scope::Local;
    std::string transcript;
    std::string language = "vi";
};

struct ExamplePair {
    std::string transcript;
    std::string summary;
};

enum class BackendKind { Extractive, Remote };

const std::string& default_instruction();
const std::vector<ExamplePair>& default_example_pairs();

struct BackendConfig {
    BackendKind kind = BackendKind::Extractive;
    std::string endpoint;  // e.g. http://localhost:8089/v1/chat/completions
    std::string model = "gpt-3.5-turbo";
    double temperature = 0.7;
    double top_p = 0.9;
    double timeout_seconds = 30.0;
    int max_retries = 2;
    int retry_backoff_ms = 200;
    std::string api_key_env = "LIVESUM_API_KEY";
    std::string instruction = default_instruction();
    std::vector<ExamplePair> example_pairs = default_example_pairs();
    size_t required_examples = 2;
};

Expected<BackendConfig> parse_backend_config(const std::string& json_text);

// Token-budget extractive baseline: keeps leading whole sentences while they
// fit max(1, floor(0.20 * transcript tokens)); if even the first sentence does
// not fit, falls back to the first `budget` tokens. Output tokens are always a
// prefix of the transcript tokens.
std::string extractive_summarize(std::string_view transcript);

// In-context prompt: instruction block, the example pairs in order, then the
// task transcript. Byte-identical for identical inputs.
Expected<std::string> build_prompt(const SummarizeTask& task, const BackendConfig& config);

Expected<std::string> summarize(const SummarizeTask& task, const BackendConfig& config);

using SummarizeFn = std::function<Expected<std::string>(const SummarizeTask&)>;

SummarizeFn make_backend(const BackendConfig& config);

}  // namespace livesum::backend
