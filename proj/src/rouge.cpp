#include "rouge.hpp"

#include <algorithm>
#include <unordered_map>

#include "unicode.hpp"

namespace livesum::rouge {

namespace {

RougeScore make_score(double overlap, double candidate_total, double reference_total) {
    RougeScore s;
    if (candidate_total <= 0.0 || reference_total <= 0.0) return s;
    s.precision = overlap / candidate_total;
    s.recall = overlap / reference_total;
    if (s.precision + s.recall > 0.0) {
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    }
    return s;
}

std::vector<std::string> ngrams(const std::vector<std::string>& tokens, int n) {
    std::vector<std::string> grams;
    if (n <= 0 || tokens.size() < static_cast<size_t>(n)) return grams;
    grams.reserve(tokens.size() - n + 1);
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string g = tokens[i];
        for (int k = 1; k < n; ++k) {
            g.push_back('\x1f');  // unit separator, cannot appear in a token
            g += tokens[i + k];
        }
        grams.push_back(std::move(g));
    }
    return grams;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (uint32_t cp : unicode::decode_utf8(text)) {
        if (unicode::is_space(cp)) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        if (unicode::is_punct(cp)) continue;
        unicode::append_utf8(current, unicode::to_lower(cp));
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

size_t token_count(std::string_view text) {
    return tokenize(text).size();
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, int n) {
    const auto cand = ngrams(tokenize(candidate), n);
    const auto ref = ngrams(tokenize(reference), n);
    if (cand.empty() || ref.empty()) return {};

    std::unordered_map<std::string, size_t> ref_counts;
    for (const auto& g : ref) ++ref_counts[g];
    size_t overlap = 0;
    for (const auto& g : cand) {
        auto it = ref_counts.find(g);
        if (it != ref_counts.end() && it->second > 0) {
            ++overlap;
            --it->second;
        }
    }
    return make_score(static_cast<double>(overlap), static_cast<double>(cand.size()),
                      static_cast<double>(ref.size()));
}

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    // Two-row DP over token sequences.
    std::vector<size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            curr[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1
                                             : std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
    const auto cand = tokenize(candidate);
    const auto ref = tokenize(reference);
    if (cand.empty() || ref.empty()) return {};
    const size_t lcs = lcs_length(cand, ref);
    return make_score(static_cast<double>(lcs), static_cast<double>(cand.size()),
                      static_cast<double>(ref.size()));
}

Expected<RougeReport> corpus_rouge(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (pairs.empty()) {
        return Error{ErrorCode::EmptyCorpus, "no (candidate, reference) pairs"};
    }
    RougeReport report;
    report.sample_count = pairs.size();
    auto accumulate = [](RougeScore& acc, const RougeScore& s) {
        acc.precision += s.precision;
        acc.recall += s.recall;
        acc.f1 += s.f1;
    };
    for (const auto& [candidate, reference] : pairs) {
        accumulate(report.r1, rouge_n(candidate, reference, 1));
        accumulate(report.r2, rouge_n(candidate, reference, 2));
        accumulate(report.rl, rouge_l(candidate, reference));
    }
    const double n = static_cast<double>(pairs.size());
    for (RougeScore* s : {&report.r1, &report.r2, &report.rl}) {
        s->precision /= n;
        s->recall /= n;
        s->f1 /= n;
    }
    return report;
}

}  // namespace livesum::rouge
