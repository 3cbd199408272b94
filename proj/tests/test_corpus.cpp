#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "rng.hpp"

using namespace livesum;
using namespace livesum::corpus;

namespace {

CorpusSample sample(const std::string& id, Split split, Scope scope, Source source,
                    std::string transcript = "bệnh nhân bị sốt cao",
                    std::string summary = "sốt cao") {
    CorpusSample s;
    s.id = id;
    s.split = split;
    s.scope = scope;
    s.source = source;
    s.transcript = std::move(transcript);
    s.summary = std::move(summary);
    return s;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string numbered_words(int count, const std::string& prefix) {
    std::string out;
    for (int i = 1; i <= count; ++i) {
        if (i > 1) out += ' ';
        out += prefix + std::to_string(i);
    }
    return out;
}

}  // namespace

TEST_CASE("load_corpus reads valid lines and reports bad ones") {
    TempFile file("livesum_corpus_basic.jsonl");
    {
        std::ofstream out(file.path);
        out << format_sample(sample("a", Split::Train, Scope::Local, Source::Real)) << "\n";
        out << format_sample(sample("b", Split::Dev, Scope::Global, Source::Sim)) << "\n";
        out << format_sample(sample("c", Split::Test, Scope::Local, Source::Syn)) << "\n";
    }
    auto loaded = load_corpus(file.path);
    REQUIRE(loaded.ok());
    CHECK(loaded->size() == 3);

    auto missing = load_corpus("/nonexistent/livesum.jsonl");
    REQUIRE_FALSE(missing.ok());
    CHECK(missing.error().code == ErrorCode::NotFound);
}

TEST_CASE("parse_sample rejects invariant violations with line numbers") {
    auto empty_summary = parse_sample(
        R"({"id":"x","split":"train","scope":"local","source":"real","transcript":"t","summary":""})",
        7);
    REQUIRE_FALSE(empty_summary.ok());
    CHECK(empty_summary.error().code == ErrorCode::ParseError);
    CHECK(empty_summary.error().message.find("line 7") != std::string::npos);

    auto bad_split = parse_sample(
        R"({"id":"x","split":"validation","scope":"local","source":"real","transcript":"t","summary":"s"})",
        3);
    REQUIRE_FALSE(bad_split.ok());
    CHECK(bad_split.error().message.find("validation") != std::string::npos);

    CHECK_FALSE(parse_sample("not json at all", 1).ok());
    CHECK_FALSE(parse_sample(R"({"id":"x"})", 1).ok());
}

TEST_CASE("write then load is the identity, including adversarial text") {
    Rng rng(404);
    const std::vector<std::string> alphabet = {"a",  "b", "c", " ", "\"", "\\", "\n",
                                               "\t", "{", "}", "[", "]",  ",",  ":",
                                               "ộ",  "ừ", "-"};
    auto random_text = [&](size_t max_len) {
        std::string text = "x";  // keep it non-empty
        const size_t len = rng.next_index(max_len);
        for (size_t i = 0; i < len; ++i) {
            // bias toward separator/quote characters
            text += alphabet[rng.next_index(alphabet.size())];
        }
        return text;
    };
    std::vector<CorpusSample> samples;
    for (int i = 0; i < 100; ++i) {
        samples.push_back(sample(
            "id-" + std::to_string(i), static_cast<Split>(rng.next_index(3)),
            rng.next_index(2) ? Scope::Local : Scope::Global,
            static_cast<Source>(rng.next_index(3)), random_text(40), random_text(20)));
    }
    TempFile file("livesum_corpus_roundtrip.jsonl");
    REQUIRE(write_corpus(samples, file.path).ok());
    auto loaded = load_corpus(file.path);
    REQUIRE(loaded.ok());
    CHECK(*loaded == samples);
}

TEST_CASE("write_corpus: empty corpus round-trips; bad path errors") {
    TempFile file("livesum_corpus_empty.jsonl");
    REQUIRE(write_corpus({}, file.path).ok());
    auto loaded = load_corpus(file.path);
    REQUIRE(loaded.ok());
    CHECK(loaded->empty());

    auto bad = write_corpus({}, "/nonexistent/dir/out.jsonl");
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().code == ErrorCode::IoError);
}

TEST_CASE("corpus_stats counts cells and words") {
    std::vector<CorpusSample> samples = {
        sample("a", Split::Train, Scope::Local, Source::Real, "một hai ba bốn", "một"),
        sample("b", Split::Train, Scope::Local, Source::Real, "năm sáu", "bảy tám"),
        sample("c", Split::Test, Scope::Global, Source::Real, "chín mười", "chín"),
    };
    const auto stats = corpus_stats(samples);
    CHECK(stats.total_count == 3);
    CHECK(stats.cells.at({Split::Train, Scope::Local, Source::Real}).count == 2);
    CHECK(stats.cells.at({Split::Test, Scope::Global, Source::Real}).count == 1);
    CHECK(stats.cells.size() == 2);
    CHECK(stats.total_input_words == 4 + 2 + 2);
    CHECK(stats.total_summary_words == 1 + 2 + 1);
    CHECK(stats.avg_summary_length() == doctest::Approx(4.0 / 3.0));

    const auto marginal = stats.marginal(Split::Train, std::nullopt, std::nullopt);
    CHECK(marginal.count == 2);

    const auto table = render_stats_table(stats);
    CHECK(table.find("train") != std::string::npos);
    CHECK(table.find("real/local") != std::string::npos);
}

TEST_CASE("corpus_stats totals are permutation invariant") {
    Rng rng(8);
    std::vector<CorpusSample> samples;
    for (int i = 0; i < 50; ++i) {
        samples.push_back(sample("s" + std::to_string(i),
                                 static_cast<Split>(rng.next_index(3)),
                                 rng.next_index(2) ? Scope::Local : Scope::Global,
                                 static_cast<Source>(rng.next_index(3))));
    }
    const auto before = corpus_stats(samples);
    // deterministic shuffle
    for (size_t i = samples.size(); i > 1; --i) {
        std::swap(samples[i - 1], samples[rng.next_index(i)]);
    }
    const auto after = corpus_stats(samples);
    CHECK(before.cells.size() == after.cells.size());
    CHECK(before.total_count == after.total_count);
    CHECK(before.total_summary_words == after.total_summary_words);
    CHECK(before.total_input_words == after.total_input_words);
    for (const auto& [key, cell] : before.cells) {
        CHECK(after.cells.at(key).count == cell.count);
    }
}

TEST_CASE("compression_rate arithmetic") {
    auto r30 = compression_rate(numbered_words(100, "t"), numbered_words(30, "s"));
    REQUIRE(r30.ok());
    CHECK(*r30 == doctest::Approx(0.30));

    const auto same = numbered_words(12, "t");
    auto r100 = compression_rate(same, same);
    REQUIRE(r100.ok());
    CHECK(*r100 == doctest::Approx(1.0));

    auto r20 = compression_rate(numbered_words(100, "t"), numbered_words(20, "s"));
    REQUIRE(r20.ok());
    CHECK(*r20 == doctest::Approx(0.20));

    auto empty = compression_rate("...", "summary");
    REQUIRE_FALSE(empty.ok());
    CHECK(empty.error().code == ErrorCode::EmptyTranscript);
}

TEST_CASE("validate_guideline boundary semantics") {
    auto pass = validate_guideline(sample("a", Split::Test, Scope::Local, Source::Real,
                                          numbered_words(100, "t"),
                                          numbered_words(20, "s")));
    CHECK(pass.compression_ok);
    CHECK_FALSE(pass.exempt_short);
    CHECK(pass.findings.empty());

    auto fail = validate_guideline(sample("b", Split::Test, Scope::Local, Source::Real,
                                          numbered_words(100, "t"),
                                          numbered_words(21, "s")));
    CHECK_FALSE(fail.compression_ok);
    CHECK(fail.findings.size() == 1);

    // 15 of 30 tokens busts the cap, but 30 < 50 exempts the transcript
    auto exempt = validate_guideline(sample("c", Split::Test, Scope::Local, Source::Real,
                                            numbered_words(30, "t"),
                                            numbered_words(15, "s")),
                                     50);
    CHECK(exempt.exempt_short);
    CHECK(exempt.compression_ok);
    CHECK(exempt.findings.empty());

    // same sample with the exemption disabled fails
    auto strict = validate_guideline(sample("d", Split::Test, Scope::Local, Source::Real,
                                            numbered_words(30, "t"),
                                            numbered_words(15, "s")),
                                     0);
    CHECK_FALSE(strict.compression_ok);
}

TEST_CASE("validate_guideline is monotone in summary length") {
    for (int summary_tokens = 1; summary_tokens <= 60; ++summary_tokens) {
        const auto report = validate_guideline(
            sample("m", Split::Test, Scope::Local, Source::Real,
                   numbered_words(100, "t"), numbered_words(summary_tokens, "s")));
        // once it fails it stays failed
        CHECK(report.compression_ok == (summary_tokens <= 20));
    }
}

TEST_CASE("validate_guideline entity retention") {
    auto s = sample("e", Split::Test, Scope::Local, Source::Real,
                    numbered_words(100, "t") + " paracetamol moi ngay",
                    numbered_words(10, "s"));
    auto report = validate_guideline(s, 50, {"paracetamol", "ibuprofen"});
    // paracetamol occurs in the transcript but not the summary; ibuprofen is
    // absent from both and raises nothing
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].find("paracetamol") != std::string::npos);

    auto kept = sample("f", Split::Test, Scope::Local, Source::Real,
                       numbered_words(100, "t") + " paracetamol moi ngay",
                       "uong paracetamol");
    CHECK(validate_guideline(kept, 50, {"paracetamol"}).findings.empty());
}
