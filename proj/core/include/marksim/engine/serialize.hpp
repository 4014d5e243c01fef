// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/reports.hpp>
#include <marksim/engine/types.hpp>

#include <nlohmann/json.hpp>

/// JSON documents for plans, outcomes and reports. Field names here are the
/// wire format of the HTTP API.
namespace marksim::engine
{
/// Throws Error{INVALID_PLAN_DOCUMENT} listing every structural problem.
WeeklyPlan plan_from_json(const nlohmann::json& doc);
nlohmann::json plan_to_json(const WeeklyPlan& plan);

nlohmann::json metrics_to_json(const SocialMetrics& m);
SocialMetrics metrics_from_json(const nlohmann::json& doc);

nlohmann::json team_state_to_json(const TeamState& s);
TeamState team_state_from_json(const nlohmann::json& doc);

template <typename T>
nlohmann::json per_product_json(const PerProduct<T>& values)
{
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t p = 0; p < kProductCount; ++p)
        out[std::string(product_id(p))] = values[p];
    return out;
}

nlohmann::json outcome_to_json(const TurnOutcome& o, const SimulationConfig& config);
nlohmann::json market_report_to_json(const MarketReport& m);
nlohmann::json report_to_json(const TurnReport& r, const SimulationConfig& config);

}  // namespace marksim::engine
