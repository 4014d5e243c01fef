// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/types.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace marksim::engine
{
/// Platform analytics shown to a team after a turn.
struct Insights
{
    SocialMetrics current;
    SocialMetrics turn_delta;     ///< change over this turn
    SocialMetrics since_genesis;  ///< change against the instructor's global baseline

    bool operator==(const Insights&) const = default;
};

struct MarketEntry
{
    int team_id = 0;
    PerProduct<std::int64_t> sales{};

    bool operator==(const MarketEntry&) const = default;
};

/// Purchasable report: every team's sales plus the consumer preference matrix.
struct MarketReport
{
    int week = 0;
    std::vector<MarketEntry> teams;
    std::vector<TargetSegment> consumer_preferences;
};

struct TurnReport
{
    int team_id = 0;
    int week = 0;
    bool test = false;
    TurnOutcome outcome;
    Insights insights;
    std::vector<std::string> feedback;
    std::optional<MarketReport> market_report;
};

MarketReport build_market_report(int week, const std::map<int, TurnOutcome>& outcomes, const SimulationConfig& config);

/// Assembles the report a team receives. `market` is attached only when
/// `purchased` is set.
TurnReport build_reports(const TurnOutcome& outcome, const SocialMetrics& global, const MarketReport& market,
                         bool purchased, bool test);

SocialMetrics metrics_delta(const SocialMetrics& to, const SocialMetrics& from) noexcept;

}  // namespace marksim::engine
