#include "evaluate.hpp"

#include <iomanip>
#include <sstream>

namespace livesum::service {

Expected<EvalReport> run_evaluate(const std::vector<corpus::CorpusSample>& samples,
                                  const backend::SummarizeFn& summarizer,
                                  const EvalOptions& options) {
    std::vector<std::pair<std::string, std::string>> local_pairs;
    std::vector<std::pair<std::string, std::string>> global_pairs;
    size_t failed = 0;
    for (const auto& sample : samples) {
        if (options.scope && sample.scope != *options.scope) continue;
        if (options.split && sample.split != *options.split) continue;
        backend::SummarizeTask task;
        task.scope = sample.scope;
        task.transcript = sample.transcript;
        auto candidate = summarizer(task);
        if (!candidate) {
            ++failed;
            continue;
        }
        auto& bucket = sample.scope == Scope::Local ? local_pairs : global_pairs;
        bucket.emplace_back(std::move(*candidate), sample.summary);
    }
    if (local_pairs.empty() && global_pairs.empty()) {
        return Error{ErrorCode::EmptyCorpus,
                     "no samples match the scope/split filter (or all failed)"};
    }

    EvalReport report;
    report.failed_samples = failed;
    if (!local_pairs.empty()) {
        auto r = rouge::corpus_rouge(local_pairs);
        if (!r) return r.error();
        report.local = *r;
    }
    if (!global_pairs.empty()) {
        auto r = rouge::corpus_rouge(global_pairs);
        if (!r) return r.error();
        report.global = *r;
    }
    auto all_pairs = local_pairs;
    all_pairs.insert(all_pairs.end(), global_pairs.begin(), global_pairs.end());
    auto overall = rouge::corpus_rouge(all_pairs);
    if (!overall) return overall.error();
    report.overall = *overall;
    return report;
}

std::string render_eval_table(const EvalReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(10) << "scope" << std::right << std::setw(9)
        << "samples" << std::setw(9) << "R-1" << std::setw(9) << "R-2" << std::setw(9)
        << "R-L" << '\n';
    auto row = [&](const char* label, const rouge::RougeReport& r) {
        out << std::left << std::setw(10) << label << std::right << std::setw(9)
            << r.sample_count << std::fixed << std::setprecision(2) << std::setw(9)
            << r.r1.f1 * 100.0 << std::setw(9) << r.r2.f1 * 100.0 << std::setw(9)
            << r.rl.f1 * 100.0 << '\n';
        out.unsetf(std::ios::fixed);
    };
    if (report.local) row("local", *report.local);
    if (report.global) row("global", *report.global);
    row("all", report.overall);
    if (report.failed_samples) {
        out << "(" << report.failed_samples << " samples failed to summarize)\n";
    }
    return out.str();
}

}  // namespace livesum::service
