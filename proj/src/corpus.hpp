#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "types.hpp"

namespace livesum::corpus {

enum class Split { Train, Dev, Test };
enum class Source { Real, Sim, Syn };

const char* split_name(Split split);
const char* source_name(Source source);
std::optional<Split> split_from_name(std::string_view name);
std::optional<Source> source_from_name(std::string_view name);

// One (transcript, reference summary) record. On disk these are UTF-8 JSON
// objects, one per line, keys {id, split, scope, source, transcript, summary}.
struct CorpusSample {
    std::string id;
    Split split = Split::Train;
    Scope scope = Scope::Local;
    Source source = Source::Real;
    std::string transcript;
    std::string summary;

    bool operator==(const CorpusSample&) const = default;
};

Expected<std::vector<CorpusSample>> load_corpus(const std::string& path);
Expected<void> write_corpus(const std::vector<CorpusSample>& samples,
                            const std::string& path);

// Line-level codecs shared with the file functions; line numbers are
// 1-based and appear in parse errors.
Expected<CorpusSample> parse_sample(const std::string& line, size_t line_number = 0);
std::string format_sample(const CorpusSample& sample);

struct CellStats {
    size_t count = 0;
    size_t summary_words = 0;
    size_t input_words = 0;
};

struct CorpusStats {
    // Keyed by (split, scope, source).
    std::map<std::tuple<Split, Scope, Source>, CellStats> cells;
    size_t total_count = 0;
    size_t total_summary_words = 0;
    size_t total_input_words = 0;

    double avg_summary_length() const;
    double avg_input_length() const;
    CellStats marginal(std::optional<Split> split, std::optional<Scope> scope,
                       std::optional<Source> source) const;
};

// Word counts use the ROUGE tokenizer, so the numbers line up with the
// evaluation side.
CorpusStats corpus_stats(const std::vector<CorpusSample>& samples);

std::string render_stats_table(const CorpusStats& stats);

// summary tokens / transcript tokens.
Expected<double> compression_rate(std::string_view transcript, std::string_view summary);

inline constexpr int kDefaultShortThreshold = 50;

struct GuidelineReport {
    bool compression_ok = false;
    double compression_rate = 0.0;
    bool exempt_short = false;
    std::vector<std::string> findings;
};

// Checks the length rule: the summary may use at most 20% of the transcript
// tokens, except when the transcript is shorter than short_threshold tokens.
// The boundary itself passes (20 of 100 is ok, 21 is not); the comparison is
// exact integer arithmetic. When an entity list is given, every entity that
// occurs in the transcript must also occur in the summary.
GuidelineReport validate_guideline(const CorpusSample& sample,
                                   int short_threshold = kDefaultShortThreshold,
                                   const std::vector<std::string>& entities = {});

}  // namespace livesum::corpus
