#include "budget.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace livesum::budget {

namespace {

constexpr double kMicro = 1e6;

int64_t to_micro(double dollars) {
    return static_cast<int64_t>(std::llround(dollars * kMicro));
}

Expected<int64_t> cost_micro(Method method, const RateCard& rates) {
    if (auto valid = validate_rate_card(rates); !valid) return valid.error();
    int64_t cost = 0;
    if (method == Method::Human) {
        cost = to_micro(rates.human_rate);
    } else {
        // rate is per 1M tokens, so tokens * rate is already micro-dollars.
        cost = static_cast<int64_t>(
            std::llround(rates.avg_in_tokens * rates.gpt_in_rate_per_mtok +
                         rates.avg_out_tokens * rates.gpt_out_rate_per_mtok));
    }
    if (cost <= 0) {
        return Error{ErrorCode::InvalidArgument,
                     "per-summary cost rounds to zero micro-dollars"};
    }
    return cost;
}

}  // namespace

Expected<void> validate_rate_card(const RateCard& rates) {
    if (rates.human_rate <= 0.0 || rates.gpt_in_rate_per_mtok <= 0.0 ||
        rates.gpt_out_rate_per_mtok <= 0.0 || rates.avg_in_tokens <= 0.0 ||
        rates.avg_out_tokens < 0.0) {
        return Error{ErrorCode::InvalidArgument, "rate card entries must be positive"};
    }
    return {};
}

Expected<double> cost_per_summary(Method method, const RateCard& rates) {
    auto cost = cost_micro(method, rates);
    if (!cost) return cost.error();
    return static_cast<double>(*cost) / kMicro;
}

Expected<int64_t> summaries_for_budget(double budget_dollars, Method method,
                                       const RateCard& rates) {
    if (budget_dollars < 0.0) {
        return Error{ErrorCode::InvalidArgument, "budget must be >= 0"};
    }
    auto cost = cost_micro(method, rates);
    if (!cost) return cost.error();
    return to_micro(budget_dollars) / *cost;
}

Expected<TwoStepPlan> plan_two_step(double budget_dollars, const RateCard& rates,
                                    double human_share) {
    if (human_share < 0.0 || human_share > 1.0) {
        return Error{ErrorCode::InvalidArgument, "human_share must be in [0, 1]"};
    }
    auto human_cost = cost_micro(Method::Human, rates);
    if (!human_cost) return human_cost.error();
    auto gpt_cost = cost_micro(Method::Gpt, rates);
    if (!gpt_cost) return gpt_cost.error();

    const int64_t budget_micro = to_micro(budget_dollars);
    const int64_t human_micro = static_cast<int64_t>(
        std::llround(static_cast<double>(budget_micro) * human_share));
    const int64_t gpt_micro = budget_micro - human_micro;

    TwoStepPlan plan;
    plan.human_budget = static_cast<double>(human_micro) / kMicro;
    plan.gpt_budget = static_cast<double>(gpt_micro) / kMicro;
    plan.human_count = human_micro / *human_cost;
    plan.gpt_count = gpt_micro / *gpt_cost;
    if (plan.human_count < 1) {
        return Error{ErrorCode::BudgetTooSmall,
                     "human share cannot afford a single summary"};
    }
    const int64_t spent =
        plan.human_count * *human_cost + plan.gpt_count * *gpt_cost;
    plan.residual = static_cast<double>(budget_micro - spent) / kMicro;
    return plan;
}

std::string render_budget_report(double budget_dollars, const RateCard& rates,
                                 double human_share) {
    std::ostringstream out;
    out << std::fixed;
    const auto human_cost = cost_per_summary(Method::Human, rates);
    const auto gpt_cost = cost_per_summary(Method::Gpt, rates);
    out << "budget: $" << std::setprecision(2) << budget_dollars << "\n";
    if (human_cost && gpt_cost) {
        out << "cost per summary: human $" << std::setprecision(5) << *human_cost
            << ", generated $" << *gpt_cost << "\n";
    }
    const auto human_only = summaries_for_budget(budget_dollars, Method::Human, rates);
    const auto gpt_only = summaries_for_budget(budget_dollars, Method::Gpt, rates);
    if (human_only && gpt_only) {
        out << "whole budget buys: " << *human_only << " human summaries or "
            << *gpt_only << " generated summaries\n";
    }
    const auto plan = plan_two_step(budget_dollars, rates, human_share);
    if (plan) {
        out << "two-step plan (" << std::setprecision(0) << human_share * 100.0
            << "% human share): " << plan->gpt_count << " generated -> "
            << plan->human_count << " human-edited, residual $"
            << std::setprecision(5) << plan->residual << "\n";
    } else {
        out << "two-step plan: " << plan.error().message << "\n";
    }
    out << "note: editing machine summaries is reported ~"
        << std::setprecision(0) << kHumanEditingSpeedup * 100.0
        << "% faster than writing them from scratch\n";
    return out.str();
}

}  // namespace livesum::budget
