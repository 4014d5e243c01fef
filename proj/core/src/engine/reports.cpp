// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/reports.hpp>

namespace marksim::engine
{
SocialMetrics metrics_delta(const SocialMetrics& to, const SocialMetrics& from) noexcept
{
    return {
        .likes = to.likes - from.likes,
        .post_engagement = to.post_engagement - from.post_engagement,
        .page_views = to.page_views - from.page_views,
        .avg_post_reach = to.avg_post_reach - from.avg_post_reach,
    };
}

MarketReport build_market_report(int week, const std::map<int, TurnOutcome>& outcomes, const SimulationConfig& config)
{
    MarketReport report;
    report.week = week;
    for (const auto& [team_id, outcome] : outcomes)
        report.teams.push_back({team_id, outcome.sales});
    report.consumer_preferences = config.segments;
    return report;
}

TurnReport build_reports(const TurnOutcome& outcome, const SocialMetrics& global, const MarketReport& market,
                         bool purchased, bool test)
{
    TurnReport r;
    r.team_id = outcome.team_id;
    r.week = outcome.week;
    r.test = test;
    r.outcome = outcome;
    r.insights.current = outcome.social_after;
    r.insights.turn_delta = metrics_delta(outcome.social_after, outcome.social_before);
    r.insights.since_genesis = metrics_delta(outcome.social_after, global);
    r.feedback = outcome.feedback;
    if (purchased)
        r.market_report = market;
    return r;
}

}  // namespace marksim::engine
