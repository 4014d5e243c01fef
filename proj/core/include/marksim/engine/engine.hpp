// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/types.hpp>
#include <marksim/error.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

/// Game rules. Every function here is pure; all state is passed in and out.
namespace marksim::engine
{
struct PlanValidation
{
    std::optional<ValidatedPlan> plan;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return plan.has_value(); }
};

/// Checks a submitted plan and reports every violation found.
PlanValidation validate_plan(const WeeklyPlan& plan, const SimulationConfig& config, const TeamState& state);

/// The plan of a team that sits out a turn.
ValidatedPlan empty_plan(int team_id, int week);

/// Initial state of a freshly registered team.
TeamState initial_team_state(int team_id, const SimulationConfig& config);

SpendMatrix effective_spend(const ValidatedPlan& plan, const SimulationConfig& config);

PerProduct<double> product_totals(const SpendMatrix& spend) noexcept;

/// 1 + alpha * (HHI - 1/3) / (2/3) over product spend shares; 1.0 for no spend.
double focus_multiplier(const SpendMatrix& spend, const EngineConstants& constants) noexcept;

/// Index of the product promoted this turn, if any: strict argmax of spend
/// share with share >= promoted_share_min.
std::optional<std::size_t> promoted_product(const SpendMatrix& spend, const EngineConstants& constants) noexcept;

PerProduct<int> update_streak(const PerProduct<int>& previous, const SpendMatrix& spend,
                              const EngineConstants& constants) noexcept;

/// Bonus/penalty for promoting the same product `weeks` turns in a row.
double streak_multiplier(int weeks) noexcept;

double synergy_multiplier(const ValidatedPlan& plan, const SpendMatrix& spend,
                          const EngineConstants& constants) noexcept;

/// clamp(round(5 + 3*affinity + 2*preference), 1, 10)
int quality_score(double affinity, double preference) noexcept;
int quality_score(const Keyword& keyword, const TargetSegment& segment, std::size_t product) noexcept;

/// Pressure one channel puts on one product before focus and synergy.
double channel_effect(const Channel& channel, double spend, double affinity, int quality, double preference) noexcept;

std::int64_t compute_sales(double pressure, int streak, double loyalty, const ProductModel& product,
                           const EngineConstants& constants, double noise = 1.0) noexcept;

/// `content_quality[p]` is the mean quality score over content-production
/// channels spending on p, or empty when p got no content spend.
PerProduct<double> update_loyalty(const PerProduct<double>& loyalty,
                                  const PerProduct<std::optional<double>>& content_quality,
                                  const EngineConstants& constants) noexcept;

/// Social metrics after a turn with `promo_spend` EUR of promotion whose cells
/// have mean quality `promo_quality`.
SocialMetrics update_social(const SocialMetrics& social, double promo_spend, double promo_quality,
                            const EngineConstants& constants) noexcept;

/// Multiplicative sales noise for (seed, week, team, product); exactly 1.0 in
/// deterministic mode.
double sales_noise(const SimulationConfig& config, std::uint64_t seed, int week, int team_id,
                   std::size_t product) noexcept;

struct TurnResult
{
    MarketState next;
    std::map<int, TurnOutcome> outcomes;  ///< keyed by team id
};

/// Resolves one turn for every team. Teams without a plan play the empty plan.
/// Throws Error{WEEK_MISMATCH} or Error{MISSING_CONFIG}.
TurnResult advance_turn(const MarketState& market, const std::map<int, ValidatedPlan>& plans,
                        const SimulationConfig& config, std::uint64_t seed);

}  // namespace marksim::engine
