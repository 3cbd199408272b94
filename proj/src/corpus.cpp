#include "corpus.hpp"
#include "jsonutil.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rouge.hpp"

namespace livesum::corpus {

using nlohmann::json;

const char* split_name(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Dev:   return "dev";
        case Split::Test:  return "test";
    }
    return "?";
}

const char* source_name(Source source) {
    switch (source) {
        case Source::Real: return "real";
        case Source::Sim:  return "sim";
        case Source::Syn:  return "syn";
    }
    return "?";
}

std::optional<Split> split_from_name(std::string_view name) {
    if (name == "train") return Split::Train;
    if (name == "dev") return Split::Dev;
    if (name == "test") return Split::Test;
    return std::nullopt;
}

std::optional<Source> source_from_name(std::string_view name) {
    if (name == "real") return Source::Real;
    if (name == "sim") return Source::Sim;
    if (name == "syn") return Source::Syn;
    return std::nullopt;
}

Expected<CorpusSample> parse_sample(const std::string& line, size_t line_number) {
    const std::string where =
        line_number ? "line " + std::to_string(line_number) + ": " : "";
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return Error{ErrorCode::ParseError, where + "not a JSON object"};
    }
    for (const char* key : {"id", "split", "scope", "source", "transcript", "summary"}) {
        if (!j.contains(key) || !j[key].is_string()) {
            return Error{ErrorCode::ParseError,
                         where + "missing or non-string field: " + key};
        }
    }
    CorpusSample sample;
    sample.id = j["id"].get<std::string>();
    const auto split = split_from_name(j["split"].get<std::string>());
    if (!split) {
        return Error{ErrorCode::ParseError,
                     where + "unknown split: " + j["split"].get<std::string>()};
    }
    sample.split = *split;
    const auto scope = scope_from_name(j["scope"].get<std::string>());
    if (!scope) {
        return Error{ErrorCode::ParseError,
                     where + "unknown scope: " + j["scope"].get<std::string>()};
    }
    sample.scope = *scope;
    const auto source = source_from_name(j["source"].get<std::string>());
    if (!source) {
        return Error{ErrorCode::ParseError,
                     where + "unknown source: " + j["source"].get<std::string>()};
    }
    sample.source = *source;
    sample.transcript = j["transcript"].get<std::string>();
    sample.summary = j["summary"].get<std::string>();
    if (sample.transcript.empty()) {
        return Error{ErrorCode::ParseError, where + "empty transcript"};
    }
    if (sample.summary.empty()) {
        return Error{ErrorCode::ParseError, where + "empty summary"};
    }
    return sample;
}

std::string format_sample(const CorpusSample& sample) {
    json j = {
        {"id", sample.id},
        {"split", split_name(sample.split)},
        {"scope", scope_name(sample.scope)},
        {"source", source_name(sample.source)},
        {"transcript", sample.transcript},
        {"summary", sample.summary},
    };
    return dump_line(j);
}

Expected<std::vector<CorpusSample>> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return Error{ErrorCode::NotFound, "cannot open corpus file: " + path};
    }
    std::vector<CorpusSample> samples;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        auto sample = parse_sample(line, line_number);
        if (!sample) return sample.error();
        samples.push_back(std::move(*sample));
    }
    return samples;
}

Expected<void> write_corpus(const std::vector<CorpusSample>& samples,
                            const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        return Error{ErrorCode::IoError, "cannot write corpus file: " + path};
    }
    for (const auto& sample : samples) {
        out << format_sample(sample) << '\n';
    }
    out.flush();
    if (!out) {
        return Error{ErrorCode::IoError, "short write to corpus file: " + path};
    }
    return {};
}

double CorpusStats::avg_summary_length() const {
    return total_count ? static_cast<double>(total_summary_words) /
                             static_cast<double>(total_count)
                       : 0.0;
}

double CorpusStats::avg_input_length() const {
    return total_count ? static_cast<double>(total_input_words) /
                             static_cast<double>(total_count)
                       : 0.0;
}

CellStats CorpusStats::marginal(std::optional<Split> split, std::optional<Scope> scope,
                                std::optional<Source> source) const {
    CellStats out;
    for (const auto& [key, cell] : cells) {
        const auto& [cell_split, cell_scope, cell_source] = key;
        if (split && *split != cell_split) continue;
        if (scope && *scope != cell_scope) continue;
        if (source && *source != cell_source) continue;
        out.count += cell.count;
        out.summary_words += cell.summary_words;
        out.input_words += cell.input_words;
    }
    return out;
}

CorpusStats corpus_stats(const std::vector<CorpusSample>& samples) {
    CorpusStats stats;
    for (const auto& sample : samples) {
        auto& cell = stats.cells[{sample.split, sample.scope, sample.source}];
        const size_t summary_words = rouge::token_count(sample.summary);
        const size_t input_words = rouge::token_count(sample.transcript);
        cell.count += 1;
        cell.summary_words += summary_words;
        cell.input_words += input_words;
        stats.total_count += 1;
        stats.total_summary_words += summary_words;
        stats.total_input_words += input_words;
    }
    return stats;
}

std::string render_stats_table(const CorpusStats& stats) {
    static constexpr std::array<std::pair<Source, Scope>, 6> columns = {{
        {Source::Real, Scope::Local},
        {Source::Real, Scope::Global},
        {Source::Sim, Scope::Local},
        {Source::Sim, Scope::Global},
        {Source::Syn, Scope::Local},
        {Source::Syn, Scope::Global},
    }};
    std::ostringstream out;
    out << std::left << std::setw(18) << "";
    for (const auto& [source, scope] : columns) {
        out << std::right << std::setw(12)
            << (std::string(source_name(source)) + "/" + scope_name(scope));
    }
    out << std::right << std::setw(12) << "all" << '\n';

    auto row = [&](const std::string& label, std::optional<Split> split) {
        out << std::left << std::setw(18) << label;
        for (const auto& [source, scope] : columns) {
            out << std::right << std::setw(12)
                << stats.marginal(split, scope, source).count;
        }
        out << std::right << std::setw(12)
            << stats.marginal(split, std::nullopt, std::nullopt).count << '\n';
    };
    row("train", Split::Train);
    row("dev", Split::Dev);
    row("test", Split::Test);
    row("total", std::nullopt);

    auto words_row = [&](const std::string& label, bool summary_side) {
        out << std::left << std::setw(18) << label;
        for (const auto& [source, scope] : columns) {
            const auto cell = stats.marginal(std::nullopt, scope, source);
            out << std::right << std::setw(12)
                << (summary_side ? cell.summary_words : cell.input_words);
        }
        out << std::right << std::setw(12)
            << (summary_side ? stats.total_summary_words : stats.total_input_words)
            << '\n';
    };
    words_row("summary words", true);
    words_row("input words", false);

    auto avg_row = [&](const std::string& label, bool summary_side) {
        out << std::left << std::setw(18) << label;
        for (const auto& [source, scope] : columns) {
            const auto cell = stats.marginal(std::nullopt, scope, source);
            std::ostringstream v;
            if (cell.count) {
                const double avg =
                    static_cast<double>(summary_side ? cell.summary_words
                                                     : cell.input_words) /
                    static_cast<double>(cell.count);
                v << std::fixed << std::setprecision(2) << avg;
            } else {
                v << "-";
            }
            out << std::right << std::setw(12) << v.str();
        }
        std::ostringstream v;
        v << std::fixed << std::setprecision(2)
          << (summary_side ? stats.avg_summary_length() : stats.avg_input_length());
        out << std::right << std::setw(12) << v.str() << '\n';
    };
    avg_row("avg summary len", true);
    avg_row("avg input len", false);
    return out.str();
}

Expected<double> compression_rate(std::string_view transcript, std::string_view summary) {
    const size_t transcript_tokens = rouge::token_count(transcript);
    if (transcript_tokens == 0) {
        return Error{ErrorCode::EmptyTranscript, "transcript has no tokens"};
    }
    return static_cast<double>(rouge::token_count(summary)) /
           static_cast<double>(transcript_tokens);
}

namespace {

// Contiguous token-subsequence match, used for the entity retention check.
bool contains_tokens(const std::vector<std::string>& haystack,
                     const std::vector<std::string>& needle) {
    if (needle.empty() || haystack.size() < needle.size()) return false;
    for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool match = true;
        for (size_t k = 0; k < needle.size(); ++k) {
            if (haystack[i + k] != needle[k]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

}  // namespace

GuidelineReport validate_guideline(const CorpusSample& sample, int short_threshold,
                                   const std::vector<std::string>& entities) {
    GuidelineReport report;
    const size_t transcript_tokens = rouge::token_count(sample.transcript);
    const size_t summary_tokens = rouge::token_count(sample.summary);

    if (summary_tokens == 0) {
        report.findings.push_back("summary has no tokens");
    }
    report.compression_rate =
        transcript_tokens
            ? static_cast<double>(summary_tokens) / static_cast<double>(transcript_tokens)
            : 0.0;
    report.exempt_short =
        transcript_tokens < static_cast<size_t>(std::max(short_threshold, 0));
    // summary/transcript <= 1/5, decided in integers so the boundary is exact.
    const bool within_cap = summary_tokens * 5 <= transcript_tokens;
    report.compression_ok = within_cap || report.exempt_short;
    if (!report.compression_ok) {
        std::ostringstream msg;
        msg << "summary uses " << summary_tokens << " of " << transcript_tokens
            << " transcript tokens (rate " << std::fixed << std::setprecision(3)
            << report.compression_rate << " > 0.20)";
        report.findings.push_back(msg.str());
    }

    if (!entities.empty()) {
        const auto transcript_toks = rouge::tokenize(sample.transcript);
        const auto summary_toks = rouge::tokenize(sample.summary);
        for (const auto& entity : entities) {
            const auto entity_toks = rouge::tokenize(entity);
            if (entity_toks.empty()) continue;
            if (contains_tokens(transcript_toks, entity_toks) &&
                !contains_tokens(summary_toks, entity_toks)) {
                report.findings.push_back("entity missing from summary: " + entity);
            }
        }
    }
    return report;
}

}  // namespace livesum::corpus
