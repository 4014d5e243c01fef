// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/types.hpp>
#include <marksim/error.hpp>
#include <marksim/ledger/gas.hpp>

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace marksim
{
/// Every tunable of a simulation. The server owns it; the engine reads it.
struct SimulationConfig
{
    engine::PerProduct<engine::ProductModel> products;
    std::vector<engine::Channel> channels;
    std::vector<engine::Keyword> keywords;
    std::vector<engine::TargetSegment> segments;
    engine::EngineConstants constants;
    ledger::GasSchedule gas;
    engine::SocialMetrics global_metrics;
    std::int64_t total_budget_per_team = 10'000;  ///< EUR
    int n_weeks = 12;                              ///< scoring turns
    bool test_round = true;                        ///< turn 0 is an unscored practice round
    engine::TurnLabel turn_label = engine::TurnLabel::weekly;
    bool deterministic = true;
    std::uint64_t seed = 0;
    std::int64_t ack_timeout_ms = 30'000;

    [[nodiscard]] std::optional<std::size_t> channel_index(std::string_view id) const noexcept;
    [[nodiscard]] std::optional<std::size_t> keyword_index(std::string_view id) const noexcept;
    [[nodiscard]] std::optional<std::size_t> segment_index(std::string_view id) const noexcept;

    /// Index of the last turn; turns run 0..last_week().
    [[nodiscard]] int last_week() const noexcept { return test_round ? n_weeks : n_weeks - 1; }
    [[nodiscard]] bool is_test_week(int week) const noexcept { return test_round && week == 0; }
};

/// The shipped configuration: the eight communication channels, nine
/// keywords, five target segments and three smartphone tiers.
SimulationConfig default_config();

/// Structural checks (ranges, uniqueness, matrix shapes). Empty when valid.
std::vector<Violation> check_config(const SimulationConfig& config);

}  // namespace marksim
