#pragma once

#include <optional>
#include <string>
#include <vector>

#include "backend.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "rouge.hpp"

namespace livesum::service {

struct EvalOptions {
    std::optional<Scope> scope;           // nullopt = all scopes
    std::optional<corpus::Split> split = corpus::Split::Test;
};

struct EvalReport {
    std::optional<rouge::RougeReport> local;
    std::optional<rouge::RougeReport> global;
    rouge::RougeReport overall;
    size_t failed_samples = 0;  // backend errors, excluded from the means
};

// Summarizes every selected transcript with the backend and scores it
// against the reference summary.
Expected<EvalReport> run_evaluate(const std::vector<corpus::CorpusSample>& samples,
                                  const backend::SummarizeFn& summarizer,
                                  const EvalOptions& options = {});

// R-1 / R-2 / R-L rows per scope, values x100.
std::string render_eval_table(const EvalReport& report);

}  // namespace livesum::service
