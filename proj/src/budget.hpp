#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace livesum::budget {

enum class Method { Human, Gpt };

// Per-summary annotation rates. human_rate is dollars per assignment; the
// generation rates are dollars per million tokens with fixed average token
// counts per summary.
struct RateCard {
    double human_rate = 0.01;
    double gpt_in_rate_per_mtok = 0.50;
    double gpt_out_rate_per_mtok = 1.50;
    double avg_in_tokens = 700.0;
    double avg_out_tokens = 20.0;
};

Expected<void> validate_rate_card(const RateCard& rates);

// Dollars per summary. Internally everything is integer micro-dollars so
// that floor divisions are exact (2.50 / 0.01 must be 250, not 249).
Expected<double> cost_per_summary(Method method, const RateCard& rates);

// floor(budget / cost_per_summary).
Expected<int64_t> summaries_for_budget(double budget_dollars, Method method,
                                       const RateCard& rates);

struct TwoStepPlan {
    int64_t gpt_count = 0;
    int64_t human_count = 0;
    double human_budget = 0.0;
    double gpt_budget = 0.0;
    double residual = 0.0;  // dollars left over after both allocations
};

// Splits the budget between generation and human editing (human_share of the
// budget goes to editing). Fails with BudgetTooSmall when the human side
// cannot afford a single summary.
Expected<TwoStepPlan> plan_two_step(double budget_dollars, const RateCard& rates,
                                    double human_share = 0.5);

// Observed speedup of editing machine summaries versus writing from scratch;
// reported constant, surfaced in reports but not modeled.
inline constexpr double kHumanEditingSpeedup = 0.70;

std::string render_budget_report(double budget_dollars, const RateCard& rates,
                                 double human_share);

}  // namespace livesum::budget
