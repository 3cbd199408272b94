#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "budget.hpp"
#include "rng.hpp"

using namespace livesum;
using namespace livesum::budget;

TEST_CASE("cost per summary") {
    RateCard rates;
    auto human = cost_per_summary(Method::Human, rates);
    REQUIRE(human.ok());
    CHECK(*human == doctest::Approx(0.01).epsilon(1e-12));

    // 700 * 0.50/1M + 20 * 1.50/1M
    auto gpt = cost_per_summary(Method::Gpt, rates);
    REQUIRE(gpt.ok());
    CHECK(*gpt == doctest::Approx(0.00038).epsilon(1e-9));

    RateCard no_output = rates;
    no_output.avg_out_tokens = 0.0;
    auto one_term = cost_per_summary(Method::Gpt, no_output);
    REQUIRE(one_term.ok());
    CHECK(*one_term == doctest::Approx(0.00035).epsilon(1e-9));
}

TEST_CASE("summaries_for_budget: the two fixed budgets") {
    RateCard rates;
    auto at_2_5 = summaries_for_budget(2.5, Method::Human, rates);
    REQUIRE(at_2_5.ok());
    CHECK(*at_2_5 == 250);

    auto at_5 = summaries_for_budget(5.0, Method::Human, rates);
    REQUIRE(at_5.ok());
    CHECK(*at_5 == 500);

    // floor(2.5 / 0.00038) = 6578, the "around 6000" generation figure
    auto gpt = summaries_for_budget(2.5, Method::Gpt, rates);
    REQUIRE(gpt.ok());
    CHECK(*gpt == 6578);

    auto zero = summaries_for_budget(0.0, Method::Human, rates);
    REQUIRE(zero.ok());
    CHECK(*zero == 0);

    CHECK_FALSE(summaries_for_budget(-1.0, Method::Human, rates).ok());
}

TEST_CASE("plan_two_step mirrors the five-dollar setting") {
    RateCard rates;
    auto plan = plan_two_step(5.0, rates, 0.5);
    REQUIRE(plan.ok());
    CHECK(plan->human_count == 250);
    CHECK(plan->gpt_count == 6578);
    CHECK(plan->human_budget == doctest::Approx(2.5));
    CHECK(plan->gpt_budget == doctest::Approx(2.5));
    // residual: 2.5 - 6578 * 0.00038 = 0.00036 on the generation side
    CHECK(plan->residual == doctest::Approx(0.00036).epsilon(1e-9));
}

TEST_CASE("plan_two_step boundaries") {
    RateCard rates;
    auto tiny = plan_two_step(0.005, rates, 0.5);
    REQUIRE_FALSE(tiny.ok());
    CHECK(tiny.error().code == ErrorCode::BudgetTooSmall);

    auto all_human = plan_two_step(5.0, rates, 1.0);
    REQUIRE(all_human.ok());
    CHECK(all_human->human_count == 500);
    CHECK(all_human->gpt_count == 0);

    CHECK_FALSE(plan_two_step(5.0, rates, 1.5).ok());
}

TEST_CASE("property: linear scaling and floor arithmetic") {
    RateCard rates;
    Rng rng(31);
    for (int round = 0; round < 200; ++round) {
        const double budget = rng.next_double() * 20.0;
        const int k = 1 + static_cast<int>(rng.next_index(5));
        for (Method method : {Method::Human, Method::Gpt}) {
            const auto base = summaries_for_budget(budget, method, rates);
            const auto scaled = summaries_for_budget(k * budget, method, rates);
            REQUIRE(base.ok());
            REQUIRE(scaled.ok());
            // floor bound: k * floor(x) <= floor(k x) <= k * floor(x) + k
            CHECK(*scaled >= k * *base);
            CHECK(*scaled <= k * *base + k);
        }
    }
}

TEST_CASE("property: monotone in budget, antitone in every rate") {
    RateCard rates;
    Rng rng(37);
    for (int round = 0; round < 200; ++round) {
        const double budget = rng.next_double() * 10.0;
        const double more = budget + rng.next_double() * 5.0;
        for (Method method : {Method::Human, Method::Gpt}) {
            CHECK(*summaries_for_budget(more, method, rates) >=
                  *summaries_for_budget(budget, method, rates));
        }
        RateCard pricier = rates;
        pricier.human_rate *= 1.0 + rng.next_double();
        pricier.gpt_in_rate_per_mtok *= 1.0 + rng.next_double();
        pricier.gpt_out_rate_per_mtok *= 1.0 + rng.next_double();
        for (Method method : {Method::Human, Method::Gpt}) {
            CHECK(*summaries_for_budget(budget, method, pricier) <=
                  *summaries_for_budget(budget, method, rates));
        }
    }
}

TEST_CASE("render_budget_report mentions the counts and the speedup") {
    const auto text = render_budget_report(5.0, RateCard{}, 0.5);
    CHECK(text.find("250") != std::string::npos);
    CHECK(text.find("6578") != std::string::npos);
    CHECK(text.find("70%") != std::string::npos);
}

TEST_CASE("rate card validation") {
    RateCard bad;
    bad.human_rate = 0.0;
    CHECK_FALSE(validate_rate_card(bad).ok());
    CHECK_FALSE(cost_per_summary(Method::Human, bad).ok());
}
