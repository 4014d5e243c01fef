// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/types.hpp>
#include <marksim/tools/client.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace marksim::tools
{
enum class Strategy
{
    random_valid,
    focus_one_product,
    table1_replay,
};

std::string_view to_string(Strategy s) noexcept;
std::optional<Strategy> strategy_from_string(std::string_view s) noexcept;

/// The eight-row example plan: 2400 EUR, product totals 1520/670/210.
engine::WeeklyPlan table1_plan(int team_id, int week);

/// Per-team generator seeded from (seed, team id).
std::mt19937_64 strategy_rng(std::uint64_t seed, int team_id);

/// A plan that always passes validate_plan for a team with `remaining`
/// budget and `turns_left` turns (including this one) to fund.
engine::WeeklyPlan make_plan(Strategy strategy, const SimulationConfig& config, int team_id, int week,
                             std::int64_t remaining, int turns_left, std::mt19937_64& rng);

struct BotOptions
{
    int teams = 10;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::random_valid;
    bool acknowledge = true;
};

struct BotSummary
{
    nlohmann::json standings;                ///< administrator table
    std::vector<std::string> block_hashes;  ///< whole chain, by height
    std::vector<double> finality_ms;         ///< per block, first ack to final
    int turns = 0;
};

/// Registers `teams` bots against a fresh session, plays every turn until the
/// session finishes, acknowledging each block with every bot key. Throws the
/// server's errors (e.g. ACCOUNTS_EXHAUSTED).
BotSummary run_bots(SimClient& client, const SimulationConfig& config, const BotOptions& options);

/// Fixed-width text table of a standings document.
std::string format_summary(const BotSummary& summary);

}  // namespace marksim::tools
