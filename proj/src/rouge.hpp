#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace livesum::rouge {

// Precision / recall / F1 for one (candidate, reference) pair, stored as
// fractions in [0, 1]. Reports render them x100.
struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct RougeReport {
    RougeScore r1;
    RougeScore r2;
    RougeScore rl;
    size_t sample_count = 0;
};

// Lowercased, punctuation-stripped, whitespace-split tokens. Punctuation
// characters are dropped in place ("nhân," -> "nhân"); case mapping covers
// the Latin ranges (full Vietnamese alphabet). Input is assumed composed
// (NFC); no canonical normalization is attempted.
std::vector<std::string> tokenize(std::string_view text);

size_t token_count(std::string_view text);

// Clipped n-gram multiset overlap. Either side having fewer than n tokens
// yields an all-zero score.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n);

// Classic longest-common-subsequence length; 0 if either sequence is empty.
size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Summary-level LCS over the full token sequences.
RougeScore rouge_l(std::string_view candidate, std::string_view reference);

// Unweighted mean of the per-pair scores for each variant.
Expected<RougeReport> corpus_rouge(
    const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace livesum::rouge
