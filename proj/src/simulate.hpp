#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace livesum::sim {

struct SimConfig {
    double p_repeat = 0.01;
    double p_filler = 0.01;
    std::vector<std::string> fillers = {"ờ", "à", "ừ", "ừm", "dạ", "ờm"};
    std::vector<size_t> avg_lengths = {15, 20, 25, 30};
    double words_per_second = 3.5;
    uint64_t seed = 42;
};

Expected<void> validate_config(const SimConfig& config);

// Spoken-style injection: each word is emitted, then repeated with
// probability p_repeat, then followed by a uniformly chosen filler with
// probability p_filler. The repeat draw always precedes the filler draw;
// the filler index is drawn only when its branch fires. Output length is
// never below input length.
std::vector<std::string> simulate_speaking_style(const std::vector<std::string>& words,
                                                 const SimConfig& config, Rng& rng);
std::vector<std::string> simulate_speaking_style(const std::vector<std::string>& words,
                                                 const SimConfig& config);

// Draws a target length from avg_lengths, then a strategy from
// {back, front, both}: back keeps the first chosen_len words, front the last
// chosen_len, both a window whose start is uniform over the valid range.
// When chosen_len >= len(words) the input is returned unchanged and no
// further draws are made. Output is always a contiguous slice of the input.
std::vector<std::string> trim_utterance(const std::vector<std::string>& words,
                                        const SimConfig& config, Rng& rng);
std::vector<std::string> trim_utterance(const std::vector<std::string>& words,
                                        const SimConfig& config);

// Splits the source into consecutive candidate windows of max(avg_lengths)
// words, trims each with trim_utterance, injects speaking style, and assigns
// synthetic timestamps at words_per_second. The result always passes
// validate_conversation. Deterministic for a fixed seed.
Expected<Conversation> simulate_conversation(std::string_view source_text,
                                             const SimConfig& config,
                                             const std::string& conversation_id = "sim");

std::vector<std::string> split_words(std::string_view text);

}  // namespace livesum::sim
