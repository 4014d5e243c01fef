// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace marksim::engine
{
/// Every simulation markets exactly three product models.
inline constexpr std::size_t kProductCount = 3;

template <typename T>
using PerProduct = std::array<T, kProductCount>;

/// Product tier; the tier index doubles as the product index and the tier
/// name as the product id used in plan documents.
enum class Tier
{
    low_end,
    mid_end,
    high_end,
};

enum class ChannelKind
{
    content_production,
    promotion,
    search,
    website,
};

enum class TurnLabel
{
    daily,
    weekly,
};

std::string_view to_string(Tier tier) noexcept;
std::string_view to_string(ChannelKind kind) noexcept;
std::string_view to_string(TurnLabel label) noexcept;
std::optional<Tier> tier_from_string(std::string_view s) noexcept;
std::optional<ChannelKind> channel_kind_from_string(std::string_view s) noexcept;
std::optional<TurnLabel> turn_label_from_string(std::string_view s) noexcept;

/// Product id for index `p` ("low_end", "mid_end", "high_end").
std::string_view product_id(std::size_t p) noexcept;
std::optional<std::size_t> product_index(std::string_view id) noexcept;

struct ProductModel
{
    Tier tier = Tier::low_end;
    std::string name;
    std::int64_t base_demand = 0;  ///< units per turn
};

struct Channel
{
    std::string id;
    std::string name;
    ChannelKind kind = ChannelKind::website;
    std::int64_t threshold = 0;  ///< EUR; budgets strictly below have no effect
    double base_efficiency = 1.0;
};

struct Keyword
{
    std::string id;
    std::string name;
    PerProduct<double> affinity{};  ///< [0,1] per product
};

struct TargetSegment
{
    std::string id;
    std::string name;
    PerProduct<double> preference{};  ///< [0,1] per product
};

struct SocialMetrics
{
    std::int64_t likes = 0;
    double post_engagement = 0.0;
    std::int64_t page_views = 0;
    std::int64_t avg_post_reach = 0;

    bool operator==(const SocialMetrics&) const = default;
};

struct EngineConstants
{
    double alpha_focus = 0.25;
    double beta_synergy = 0.15;
    double gamma_demand = 0.4;
    double e_ref = 1000.0;  ///< EUR
    double lambda_loyalty = 0.8;
    double noise_low = 0.95;
    double noise_high = 1.05;
    std::int64_t market_report_price = 200;  ///< EUR
    double promoted_share_min = 0.5;

    bool operator==(const EngineConstants&) const = default;
};

struct ChannelAllocation
{
    std::string channel_id;
    std::int64_t budget = 0;  ///< EUR
    PerProduct<int> split{};  ///< percentages, must sum to 100
    std::string keyword_id;
    std::string segment_id;

    bool operator==(const ChannelAllocation&) const = default;
};

/// A team's choices for one turn as submitted.
struct WeeklyPlan
{
    int team_id = 0;
    int week = 0;
    std::vector<ChannelAllocation> allocations;
    bool market_report_requested = false;

    bool operator==(const WeeklyPlan&) const = default;
};

/// Allocation with ids resolved to config indices.
struct ResolvedAllocation
{
    std::size_t channel = 0;
    std::int64_t budget = 0;
    PerProduct<int> split{};
    std::size_t keyword = 0;
    std::size_t segment = 0;

    bool operator==(const ResolvedAllocation&) const = default;
};

/// A plan that passed validation. Allocations are ordered by channel index.
/// Only validate_plan() and empty_plan() produce one.
class ValidatedPlan
{
public:
    [[nodiscard]] int team_id() const noexcept { return team_id_; }
    [[nodiscard]] int week() const noexcept { return week_; }
    [[nodiscard]] const std::vector<ResolvedAllocation>& allocations() const noexcept
    {
        return allocations_;
    }
    [[nodiscard]] bool market_report_requested() const noexcept { return market_report_requested_; }
    [[nodiscard]] const WeeklyPlan& source() const noexcept { return source_; }

    /// Sum of channel budgets, EUR.
    [[nodiscard]] std::int64_t total_budget() const noexcept;

    bool operator==(const ValidatedPlan&) const = default;

private:
    friend struct PlanFactory;

    int team_id_ = 0;
    int week_ = 0;
    std::vector<ResolvedAllocation> allocations_;
    bool market_report_requested_ = false;
    WeeklyPlan source_;
};

/// Effective EUR spend per (channel index, product).
using SpendMatrix = std::vector<PerProduct<double>>;

struct TeamState
{
    int team_id = 0;
    std::int64_t remaining_budget = 0;
    PerProduct<int> streaks{};
    PerProduct<double> loyalty{};
    SocialMetrics social;

    bool operator==(const TeamState&) const = default;
};

struct MarketState
{
    int week = 0;
    std::vector<TeamState> teams;

    bool operator==(const MarketState&) const = default;
};

struct TurnOutcome
{
    int team_id = 0;
    int week = 0;
    SpendMatrix effective_spend;
    PerProduct<double> pressures{};
    PerProduct<std::int64_t> sales{};
    double focus_multiplier = 1.0;
    double synergy_multiplier = 1.0;
    PerProduct<int> streaks{};
    PerProduct<double> streak_multipliers{};
    /// Per channel index; empty for channels the plan did not allocate.
    std::vector<std::optional<PerProduct<int>>> quality_scores;
    PerProduct<double> noise{};
    PerProduct<double> loyalty_before{};
    PerProduct<double> loyalty_after{};
    SocialMetrics social_before;
    SocialMetrics social_after;
    std::int64_t budget_debited = 0;
    std::int64_t remaining_budget = 0;
    std::vector<std::string> feedback;

    bool operator==(const TurnOutcome&) const = default;
};

}  // namespace marksim::engine
