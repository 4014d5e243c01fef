// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/support.hpp"

#include <marksim/engine/engine.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace marksim;
using namespace marksim::engine;

namespace
{
constexpr int kCases = 500;

ValidatedPlan validated(const WeeklyPlan& plan, const SimulationConfig& config, const TeamState& state)
{
    auto r = validate_plan(plan, config, state);
    if (!r.ok())
        throw std::logic_error("generator produced an invalid plan: " + r.violations.front().code);
    return std::move(*r.plan);
}

TurnOutcome play(const WeeklyPlan& plan, const SimulationConfig& config, const TeamState& state, std::uint64_t seed = 0)
{
    MarketState market{plan.week, {state}};
    return advance_turn(market, {{state.team_id, validated(plan, config, state)}}, config, seed).outcomes.at(state.team_id);
}

}  // namespace

TEST(Properties, OutputsStayInRange)
{
    auto config = default_config();
    config.deterministic = false;
    std::mt19937_64 rng(42);
    const auto& k = config.constants;
    for (int i = 0; i < kCases; ++i)
    {
        const auto state = initial_team_state(1, config);
        const auto plan = testing_support::random_valid_plan(rng, config, 1, 0, state.remaining_budget);
        const auto o = play(plan, config, state, rng());
        EXPECT_GE(o.focus_multiplier, 1.0 - 1e-12);
        EXPECT_LE(o.focus_multiplier, 1.0 + k.alpha_focus + 1e-12);
        EXPECT_GE(o.synergy_multiplier, 1.0);
        EXPECT_LE(o.synergy_multiplier, 1.0 + k.beta_synergy + 1e-12);
        for (std::size_t p = 0; p < kProductCount; ++p)
        {
            EXPECT_GE(o.sales[p], 0);
            EXPECT_GE(o.pressures[p], 0.0);
            EXPECT_GE(o.loyalty_after[p], 0.0);
            EXPECT_LE(o.loyalty_after[p], 1.0);
            EXPECT_GE(o.noise[p], k.noise_low);
            EXPECT_LT(o.noise[p], k.noise_high);
        }
        for (const auto& q : o.quality_scores)
            if (q)
                for (const int v : *q)
                {
                    EXPECT_GE(v, 1);
                    EXPECT_LE(v, 10);
                }
        EXPECT_GE(o.social_after.post_engagement, 0.0);
        EXPECT_LE(o.social_after.post_engagement, 1.0);
        EXPECT_GE(o.remaining_budget, 0);
        EXPECT_EQ(o.remaining_budget, state.remaining_budget - o.budget_debited);
    }
}

TEST(Properties, BudgetNeverGoesNegativeOverAFullGame)
{
    const auto config = default_config();
    std::mt19937_64 rng(7);
    for (int game = 0; game < 20; ++game)
    {
        MarketState market{0, {initial_team_state(1, config), initial_team_state(2, config)}};
        for (int week = 0; week <= config.last_week(); ++week)
        {
            std::map<int, ValidatedPlan> plans;
            for (const auto& t : market.teams)
                plans.emplace(t.team_id, validated(testing_support::random_valid_plan(rng, config, t.team_id, week,
                                                                                    t.remaining_budget),
                                                   config, t));
            const auto result = advance_turn(market, plans, config, 0);
            for (const auto& [id, o] : result.outcomes)
            {
                EXPECT_EQ(o.budget_debited, plans.at(id).total_budget() +
                                                (plans.at(id).market_report_requested() ? 200 : 0));
                EXPECT_GE(o.remaining_budget, 0);
            }
            market = result.next;
        }
        EXPECT_EQ(market.week, config.last_week() + 1);
    }
}

TEST(Properties, SplitConservesTheChannelBudget)
{
    const auto config = default_config();
    std::mt19937_64 rng(3);
    for (int i = 0; i < kCases; ++i)
    {
        const auto state = initial_team_state(1, config);
        const auto plan = validated(testing_support::random_valid_plan(rng, config, 1, 0, state.remaining_budget),
                                    config, state);
        const auto spend = effective_spend(plan, config);
        for (const auto& a : plan.allocations())
        {
            const double sum = std::accumulate(spend[a.channel].begin(), spend[a.channel].end(), 0.0);
            if (a.budget >= config.channels[a.channel].threshold)
                EXPECT_NEAR(sum, static_cast<double>(a.budget), 1e-9);
            else
                EXPECT_EQ(sum, 0.0);
        }
    }
}

TEST(Properties, ThresholdIsACliff)
{
    const auto config = default_config();
    const auto state = initial_team_state(1, config);
    for (const auto& ch : config.channels)
    {
        auto plan_at = [&](std::int64_t budget) {
            return WeeklyPlan{1, 0, {{ch.id, budget, {40, 30, 30}, "memory", "families"}}, false};
        };
        const auto below = play(plan_at(ch.threshold - 1), config, state);
        const auto at = play(plan_at(ch.threshold), config, state);
        for (std::size_t p = 0; p < kProductCount; ++p)
        {
            EXPECT_EQ(below.pressures[p], 0.0) << ch.id;
            EXPECT_GT(at.pressures[p], 0.0) << ch.id;
            EXPECT_GE(at.sales[p], below.sales[p]) << ch.id;
        }
        EXPECT_EQ(below.budget_debited, ch.threshold - 1);
    }
}

TEST(Properties, MoreBudgetOnOneChannelNeverLowersSales)
{
    const auto config = default_config();
    const auto state = initial_team_state(1, config);
    std::mt19937_64 rng(11);
    for (int i = 0; i < kCases; ++i)
    {
        const auto& ch = config.channels[rng() % config.channels.size()];
        const auto& kw = config.keywords[rng() % config.keywords.size()];
        const auto& seg = config.segments[rng() % config.segments.size()];
        const int x = static_cast<int>(rng() % 101);
        const PerProduct<int> split{x, 100 - x, 0};
        const auto lo = ch.threshold + static_cast<std::int64_t>(rng() % 3000);
        const auto hi = lo + 1 + static_cast<std::int64_t>(rng() % 3000);
        const auto a = play({1, 0, {{ch.id, lo, split, kw.id, seg.id}}, false}, config, state);
        const auto b = play({1, 0, {{ch.id, hi, split, kw.id, seg.id}}, false}, config, state);
        for (std::size_t p = 0; p < kProductCount; ++p)
        {
            EXPECT_GE(b.pressures[p], a.pressures[p]);
            EXPECT_GE(b.sales[p], a.sales[p]);
        }
    }
}

TEST(Properties, TurnsAreDeterministic)
{
    auto config = default_config();
    config.deterministic = false;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i)
    {
        const auto state = initial_team_state(1, config);
        const auto plan = testing_support::random_valid_plan(rng, config, 1, 0, state.remaining_budget);
        const auto seed = rng();
        EXPECT_EQ(play(plan, config, state, seed), play(plan, config, state, seed));
    }
}

TEST(Properties, TeamsDoNotInfluenceEachOther)
{
    const auto config = default_config();
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i)
    {
        const auto s1 = initial_team_state(1, config);
        const auto s2 = initial_team_state(2, config);
        const auto p1 = validated(testing_support::random_valid_plan(rng, config, 1, 0, s1.remaining_budget), config, s1);
        const auto p2 = validated(testing_support::random_valid_plan(rng, config, 2, 0, s2.remaining_budget), config, s2);
        const auto alone = advance_turn({0, {s1}}, {{1, p1}}, config, 0).outcomes.at(1);
        const auto together = advance_turn({0, {s2, s1}}, {{1, p1}, {2, p2}}, config, 0).outcomes.at(1);
        EXPECT_EQ(alone, together);
    }
}

TEST(Properties, StreakResetsWhenNothingIsPromoted)
{
    const auto config = default_config();
    const auto& k = config.constants;
    SpendMatrix even(config.channels.size(), PerProduct<double>{});
    even[0] = {300.0, 300.0, 400.0};
    EXPECT_EQ(update_streak({5, 2, 7}, even, k), (PerProduct<int>{0, 0, 0}));
    SpendMatrix tie(config.channels.size(), PerProduct<double>{});
    tie[0] = {500.0, 500.0, 0.0};
    EXPECT_EQ(update_streak({5, 2, 7}, tie, k), (PerProduct<int>{0, 0, 0}));
    SpendMatrix led(config.channels.size(), PerProduct<double>{});
    led[0] = {0.0, 0.0, 500.0};
    EXPECT_EQ(update_streak({5, 2, 7}, led, k), (PerProduct<int>{0, 0, 8}));
}

TEST(Properties, StreakMultiplierNeverIncreasesAfterThePeak)
{
    for (int w = 3; w < 40; ++w)
        EXPECT_LE(streak_multiplier(w + 1), streak_multiplier(w)) << w;
    for (int w = 0; w < 40; ++w)
        EXPECT_GE(streak_multiplier(w), 0.05);
}
