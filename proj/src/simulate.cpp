#include "simulate.hpp"

#include <algorithm>
#include <cctype>

#include "rouge.hpp"

namespace livesum::sim {

Expected<void> validate_config(const SimConfig& config) {
    if (config.p_repeat < 0.0 || config.p_repeat > 1.0 || config.p_filler < 0.0 ||
        config.p_filler > 1.0) {
        return Error{ErrorCode::InvalidArgument, "probabilities must be in [0, 1]"};
    }
    if (config.p_filler > 0.0 && config.fillers.empty()) {
        return Error{ErrorCode::InvalidArgument, "p_filler > 0 needs a filler list"};
    }
    if (config.avg_lengths.empty()) {
        return Error{ErrorCode::InvalidArgument, "avg_lengths must be non-empty"};
    }
    for (size_t len : config.avg_lengths) {
        if (len < 1) return Error{ErrorCode::InvalidArgument, "avg_lengths entries >= 1"};
    }
    if (config.words_per_second <= 0.0) {
        return Error{ErrorCode::InvalidArgument, "words_per_second must be positive"};
    }
    return {};
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                words.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

std::vector<std::string> simulate_speaking_style(const std::vector<std::string>& words,
                                                 const SimConfig& config, Rng& rng) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& word : words) {
        out.push_back(word);
        if (rng.next_double() < config.p_repeat) {
            out.push_back(word);
        }
        if (rng.next_double() < config.p_filler && !config.fillers.empty()) {
            out.push_back(config.fillers[rng.next_index(config.fillers.size())]);
        }
    }
    return out;
}

std::vector<std::string> simulate_speaking_style(const std::vector<std::string>& words,
                                                 const SimConfig& config) {
    Rng rng(config.seed);
    return simulate_speaking_style(words, config, rng);
}

std::vector<std::string> trim_utterance(const std::vector<std::string>& words,
                                        const SimConfig& config, Rng& rng) {
    const size_t chosen_len = config.avg_lengths[rng.next_index(config.avg_lengths.size())];
    if (chosen_len >= words.size()) return words;
    // 0 = back, 1 = front, 2 = both
    const size_t strategy = rng.next_index(3);
    size_t start = 0;
    if (strategy == 1) {
        start = words.size() - chosen_len;
    } else if (strategy == 2) {
        start = rng.next_index(words.size() - chosen_len + 1);
    }
    return {words.begin() + start, words.begin() + start + chosen_len};
}

std::vector<std::string> trim_utterance(const std::vector<std::string>& words,
                                        const SimConfig& config) {
    Rng rng(config.seed);
    return trim_utterance(words, config, rng);
}

Expected<Conversation> simulate_conversation(std::string_view source_text,
                                             const SimConfig& config,
                                             const std::string& conversation_id) {
    if (auto valid = validate_config(config); !valid) return valid.error();
    const auto words = split_words(source_text);
    if (words.empty()) {
        return Error{ErrorCode::EmptySource, "source text has no words"};
    }

    Rng rng(config.seed);
    const size_t window =
        *std::max_element(config.avg_lengths.begin(), config.avg_lengths.end());

    Conversation conversation;
    conversation.id = conversation_id;
    double clock = 0.0;
    size_t cursor = 0;
    size_t index = 0;
    while (cursor < words.size()) {
        const size_t take = std::min(window, words.size() - cursor);
        const std::vector<std::string> candidate(words.begin() + cursor,
                                                 words.begin() + cursor + take);
        auto chunk = trim_utterance(candidate, config, rng);
        chunk = simulate_speaking_style(chunk, config, rng);

        // A chunk of pure punctuation would not survive validation; skip it.
        if (std::none_of(chunk.begin(), chunk.end(), [](const std::string& w) {
                return rouge::token_count(w) > 0;
            })) {
            cursor += take;
            continue;
        }

        Utterance u;
        u.id = "u" + std::to_string(index + 1);
        u.speaker = (index % 2 == 0) ? "spk0" : "spk1";
        std::string text;
        for (size_t i = 0; i < chunk.size(); ++i) {
            if (i) text += ' ';
            text += chunk[i];
        }
        u.text = std::move(text);
        u.t_start = clock;
        clock += static_cast<double>(chunk.size()) / config.words_per_second;
        u.t_end = clock;
        conversation.utterances.push_back(std::move(u));

        cursor += take;
        ++index;
    }
    return conversation;
}

}  // namespace livesum::sim
