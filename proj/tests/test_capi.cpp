#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <livesum.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Owned {
    char* ptr = nullptr;
    ~Owned() { livesum_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

std::string utterance_line(const std::string& session, int index, double t0, double t1) {
    return json{{"type", "utterance"},
                {"session", session},
                {"id", "u" + std::to_string(index)},
                {"text", "lời nói thứ " + std::to_string(index)},
                {"t_start", t0},
                {"t_end", t1}}
        .dump();
}

std::vector<json> drain(livesum_pipeline* pipeline) {
    std::vector<json> events;
    for (;;) {
        Owned line;
        const int rc = livesum_pipeline_poll(pipeline, 20, &line.ptr);
        REQUIRE(rc >= 0);
        if (rc == 1) {
            events.push_back(json::parse(line.str()));
            continue;
        }
        if (livesum_pipeline_pending(pipeline) == 0) break;
    }
    return events;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(livesum_version()) == LIVESUM_VERSION);
    CHECK(std::string(livesum_status_name(LIVESUM_OK)) == "ok");
    CHECK(std::string(livesum_status_name(LIVESUM_ERR_PARSE)) == "parse_error");
}

TEST_CASE("pipeline end to end over the C surface") {
    livesum_pipeline* pipeline =
        livesum_pipeline_open(R"({"n_max":2,"t_max":30.0})");
    REQUIRE(pipeline != nullptr);
    for (int i = 1; i <= 5; ++i) {
        REQUIRE(livesum_pipeline_feed(
                    pipeline, utterance_line("s1", i, i - 1.0, double(i)).c_str()) ==
                LIVESUM_OK);
    }
    REQUIRE(livesum_pipeline_feed(
                pipeline,
                json{{"type", "end_of_conversation"}, {"session", "s1"}}.dump().c_str()) ==
            LIVESUM_OK);
    const auto events = drain(pipeline);
    livesum_pipeline_close(pipeline);

    REQUIRE(events.size() == 4);  // windows of 2,2,1 then the global
    CHECK(events[0]["window_index"] == 0);
    CHECK(events[1]["window_index"] == 1);
    CHECK(events[2]["window_index"] == 2);
    CHECK(events[3]["type"] == "global_summary");
}

TEST_CASE("pipeline_open rejects a bad config with a message") {
    livesum_pipeline* pipeline = livesum_pipeline_open(R"({"n_max":0})");
    CHECK(pipeline == nullptr);
    CHECK(std::string(livesum_last_error()).find("n_max") != std::string::npos);
}

TEST_CASE("pipeline_open with NULL config uses the defaults") {
    livesum_pipeline* pipeline = livesum_pipeline_open(nullptr);
    REQUIRE(pipeline != nullptr);
    for (int i = 1; i <= 4; ++i) {
        livesum_pipeline_feed(pipeline,
                              utterance_line("d", i, i - 1.0, double(i)).c_str());
    }
    const auto events = drain(pipeline);  // default n_max 4 closes one window
    livesum_pipeline_close(pipeline);
    REQUIRE(events.size() == 1);
    CHECK(events[0]["type"] == "local_summary");
}

TEST_CASE("extractive_summarize over the C surface") {
    Owned summary;
    REQUIRE(livesum_extractive_summarize("w1 w2 w3 w4 w5 w6 w7 w8 w9 w10",
                                         &summary.ptr) == LIVESUM_OK);
    CHECK(summary.str() == "w1 w2");
    CHECK(livesum_extractive_summarize("", &summary.ptr) == LIVESUM_ERR_EMPTY_INPUT);
}

TEST_CASE("rouge_pair fills the nine slots") {
    double scores[9] = {};
    REQUIRE(livesum_rouge_pair("the cat sat", "the cat ate", scores) == LIVESUM_OK);
    CHECK(scores[0] == doctest::Approx(2.0 / 3.0));  // r1 precision
    CHECK(scores[2] == doctest::Approx(2.0 / 3.0));  // r1 f1
    CHECK(scores[5] == doctest::Approx(0.5));        // r2 f1
    CHECK(scores[8] == doctest::Approx(2.0 / 3.0));  // rl f1
}

TEST_CASE("simulate returns a conversation and matching events") {
    const char* source = "một hai ba bốn năm sáu bảy tám chín mười";
    Owned conversation_json;
    REQUIRE(livesum_simulate(source, R"({"seed":7,"avg_lengths":[5]})", "c1",
                             &conversation_json.ptr) == LIVESUM_OK);
    const auto conversation = json::parse(conversation_json.str());
    CHECK(conversation["id"] == "c1");
    CHECK(conversation["utterances"].size() == 2);

    Owned events_text;
    REQUIRE(livesum_simulate_events(source, R"({"seed":7,"avg_lengths":[5]})", "c1",
                                    &events_text.ptr) == LIVESUM_OK);
    std::istringstream lines(events_text.str());
    std::string line;
    std::vector<json> events;
    while (std::getline(lines, line)) events.push_back(json::parse(line));
    REQUIRE(events.size() == 3);  // two utterances + end_of_conversation
    CHECK(events[0]["type"] == "utterance");
    CHECK(events[2]["type"] == "end_of_conversation");
    CHECK(events[0]["text"] == conversation["utterances"][0]["text"]);

    CHECK(livesum_simulate("   ", nullptr, "c1", &conversation_json.ptr) ==
          LIVESUM_ERR_EMPTY_INPUT);
}

TEST_CASE("simulate_corpus produces loadable samples") {
    std::string source;
    for (int i = 0; i < 200; ++i) source += "từ" + std::to_string(i) + " ";
    Owned jsonl;
    REQUIRE(livesum_simulate_corpus(
                source.c_str(),
                R"({"sim":{"seed":3,"avg_lengths":[10]},"pipeline":{"n_max":4},"split":"dev"})",
                "doc7", &jsonl.ptr) == LIVESUM_OK);
    std::istringstream lines(jsonl.str());
    std::string line;
    size_t locals = 0, globals = 0;
    while (std::getline(lines, line)) {
        const auto record = json::parse(line);
        CHECK(record["split"] == "dev");
        CHECK(record["source"] == "sim");
        CHECK_FALSE(record["summary"].get<std::string>().empty());
        if (record["scope"] == "local") ++locals;
        if (record["scope"] == "global") ++globals;
    }
    CHECK(locals == 5);  // 20 utterances of ~10 words in windows of 4
    CHECK(globals == 1);
}

TEST_CASE("corpus stats and validation over the C surface") {
    TempFile corpus("livesum_capi_corpus.jsonl");
    {
        std::ofstream out(corpus.path);
        out << json{{"id", "a"},          {"split", "train"},
                    {"scope", "local"},   {"source", "real"},
                    {"transcript", "một hai ba bốn năm"}, {"summary", "một"}}
                   .dump()
            << "\n";
        out << json{{"id", "b"},          {"split", "test"},
                    {"scope", "global"},  {"source", "syn"},
                    {"transcript", "sáu bảy tám"}, {"summary", "sáu bảy tám chín"}}
                   .dump()
            << "\n";
    }

    Owned stats;
    REQUIRE(livesum_corpus_stats_file(corpus.path.c_str(), &stats.ptr) == LIVESUM_OK);
    const auto parsed = json::parse(stats.str());
    CHECK(parsed["total_count"] == 2);
    CHECK(parsed["cells"].size() == 2);
    CHECK(parsed["rendered"].get<std::string>().find("train") != std::string::npos);

    Owned report;
    REQUIRE(livesum_corpus_validate_file(corpus.path.c_str(), 0, nullptr,
                                         &report.ptr) == LIVESUM_OK);
    const auto validation = json::parse(report.str());
    CHECK(validation["checked"] == 2);
    // sample b's summary is longer than 20% of its transcript
    CHECK(validation["failed"] == 1);

    CHECK(livesum_corpus_stats_file("/no/such/file", &stats.ptr) ==
          LIVESUM_ERR_NOT_FOUND);
}

TEST_CASE("evaluate_file over the C surface") {
    TempFile corpus("livesum_capi_eval.jsonl");
    {
        std::ofstream out(corpus.path);
        for (int i = 0; i < 3; ++i) {
            out << json{{"id", "t" + std::to_string(i)},
                        {"split", "test"},
                        {"scope", "local"},
                        {"source", "real"},
                        {"transcript", "alpha beta gamma delta epsilon"},
                        {"summary", "alpha"}}
                       .dump()
                << "\n";
        }
    }
    Owned report;
    REQUIRE(livesum_evaluate_file(corpus.path.c_str(), nullptr, "all", "test",
                                  &report.ptr) == LIVESUM_OK);
    const auto parsed = json::parse(report.str());
    CHECK(parsed["all"]["sample_count"] == 3);
    // extractive keeps the first token of five: exactly the reference
    CHECK(parsed["all"]["r1"]["f1"].get<double>() == doctest::Approx(1.0));
    CHECK(parsed["rendered"].get<std::string>().find("R-1") != std::string::npos);
}

TEST_CASE("budget_report over the C surface") {
    Owned report;
    REQUIRE(livesum_budget_report(nullptr, 5.0, 0.5, &report.ptr) == LIVESUM_OK);
    const auto parsed = json::parse(report.str());
    CHECK(parsed["summaries_for_budget"]["human"] == 500);
    CHECK(parsed["plan"]["human_count"] == 250);
    CHECK(parsed["plan"]["gpt_count"] == 6578);
    CHECK(parsed["cost_per_summary"]["gpt"].get<double>() ==
          doctest::Approx(0.00038).epsilon(1e-9));

    CHECK(livesum_budget_report(R"({"human_rate":-1})", 5.0, 0.5, &report.ptr) ==
          LIVESUM_ERR_INVALID_ARGUMENT);
}
