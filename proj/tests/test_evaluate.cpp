#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "backend.hpp"
#include "evaluate.hpp"
#include "rouge.hpp"

using namespace livesum;
using namespace livesum::service;
using livesum::corpus::CorpusSample;
using livesum::corpus::Source;
using livesum::corpus::Split;

namespace {

CorpusSample sample(const std::string& id, Split split, Scope scope,
                    const std::string& transcript, const std::string& summary) {
    CorpusSample s;
    s.id = id;
    s.split = split;
    s.scope = scope;
    s.source = Source::Real;
    s.transcript = transcript;
    s.summary = summary;
    return s;
}

std::vector<CorpusSample> fixture() {
    return {
        sample("t1", Split::Test, Scope::Local, "bệnh nhân sốt cao hai ngày liền",
               "sốt cao hai ngày"),
        sample("t2", Split::Test, Scope::Local, "bác sĩ kê đơn thuốc hạ sốt",
               "kê thuốc hạ sốt"),
        sample("t3", Split::Test, Scope::Global,
               "bệnh nhân sốt cao bác sĩ kê đơn hạ sốt và hẹn tái khám",
               "sốt cao, kê thuốc, hẹn tái khám"),
        sample("t4", Split::Test, Scope::Global, "trao đổi về chế độ ăn uống",
               "tư vấn ăn uống"),
        sample("t5", Split::Test, Scope::Local, "đo huyết áp cho kết quả bình thường",
               "huyết áp bình thường"),
        sample("d1", Split::Dev, Scope::Local, "dữ liệu dev không được dùng",
               "không dùng"),
    };
}

}  // namespace

TEST_CASE("identity backend scores 1.0 across the board") {
    const auto samples = fixture();
    std::map<std::string, std::string> reference_by_transcript;
    for (const auto& s : samples) reference_by_transcript[s.transcript] = s.summary;
    auto identity = [&](const backend::SummarizeTask& task) -> Expected<std::string> {
        return reference_by_transcript.at(task.transcript);
    };
    auto report = run_evaluate(samples, identity, {});
    REQUIRE(report.ok());
    CHECK(report->overall.r1.f1 == doctest::Approx(1.0));
    CHECK(report->overall.r2.f1 == doctest::Approx(1.0));
    CHECK(report->overall.rl.f1 == doctest::Approx(1.0));
    REQUIRE(report->local.has_value());
    CHECK(report->local->sample_count == 3);
    REQUIRE(report->global.has_value());
    CHECK(report->global->sample_count == 2);
    // the dev sample stays out of the default test split
    CHECK(report->overall.sample_count == 5);

    const auto table = render_eval_table(*report);
    CHECK(table.find("100.00") != std::string::npos);
}

TEST_CASE("a disjoint-vocabulary backend scores 0.0") {
    auto fixed = [](const backend::SummarizeTask&) -> Expected<std::string> {
        return std::string("zzz yyy xxx");
    };
    auto report = run_evaluate(fixture(), fixed, {});
    REQUIRE(report.ok());
    CHECK(report->overall.r1.f1 == doctest::Approx(0.0));
    CHECK(report->overall.r2.f1 == doctest::Approx(0.0));
    CHECK(report->overall.rl.f1 == doctest::Approx(0.0));
}

TEST_CASE("extractive backend matches an independent per-sample computation") {
    const auto samples = fixture();
    auto extractive = [](const backend::SummarizeTask& task) -> Expected<std::string> {
        return backend::extractive_summarize(task.transcript);
    };
    auto report = run_evaluate(samples, extractive, {});
    REQUIRE(report.ok());

    // recompute pair by pair, then average
    double r1 = 0, r2 = 0, rl = 0;
    size_t n = 0;
    for (const auto& s : samples) {
        if (s.split != Split::Test) continue;
        const auto candidate = backend::extractive_summarize(s.transcript);
        r1 += rouge::rouge_n(candidate, s.summary, 1).f1;
        r2 += rouge::rouge_n(candidate, s.summary, 2).f1;
        rl += rouge::rouge_l(candidate, s.summary).f1;
        ++n;
    }
    REQUIRE(n == 5);
    CHECK(report->overall.r1.f1 == doctest::Approx(r1 / n).epsilon(1e-12));
    CHECK(report->overall.r2.f1 == doctest::Approx(r2 / n).epsilon(1e-12));
    CHECK(report->overall.rl.f1 == doctest::Approx(rl / n).epsilon(1e-12));
}

TEST_CASE("scope and split filters narrow the set") {
    const auto samples = fixture();
    auto fixed = [](const backend::SummarizeTask&) -> Expected<std::string> {
        return std::string("x");
    };
    EvalOptions local_only;
    local_only.scope = Scope::Local;
    auto report = run_evaluate(samples, fixed, local_only);
    REQUIRE(report.ok());
    CHECK(report->overall.sample_count == 3);
    CHECK_FALSE(report->global.has_value());

    EvalOptions dev_split;
    dev_split.split = Split::Dev;
    auto dev_report = run_evaluate(samples, fixed, dev_split);
    REQUIRE(dev_report.ok());
    CHECK(dev_report->overall.sample_count == 1);

    EvalOptions impossible;
    impossible.split = Split::Train;
    auto empty = run_evaluate(samples, fixed, impossible);
    REQUIRE_FALSE(empty.ok());
    CHECK(empty.error().code == ErrorCode::EmptyCorpus);
}

TEST_CASE("failed samples are counted and skipped") {
    const auto samples = fixture();
    auto flaky = [](const backend::SummarizeTask& task) -> Expected<std::string> {
        if (task.transcript.find("huyết áp") != std::string::npos) {
            return Error{ErrorCode::BackendUnavailable, "down"};
        }
        return std::string("tóm tắt");
    };
    auto report = run_evaluate(samples, flaky, {});
    REQUIRE(report.ok());
    CHECK(report->failed_samples == 1);
    CHECK(report->overall.sample_count == 4);
}
