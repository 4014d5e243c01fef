// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/types.hpp>
#include <marksim/ledger/ledger.hpp>

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testing_support
{
/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// Millisecond clock that only moves when told to. Copies share the time.
class ManualClock
{
public:
    explicit ManualClock(std::int64_t start_ms = 1'000) : now_(std::make_shared<std::atomic<std::int64_t>>(start_ms)) {}
    [[nodiscard]] std::function<std::int64_t()> source() const
    {
        return [now = now_] { return now->load(); };
    }
    void advance(std::int64_t ms) { *now_ += ms; }
    [[nodiscard]] std::int64_t now() const { return now_->load(); }

private:
    std::shared_ptr<std::atomic<std::int64_t>> now_;
};

nlohmann::json load_fixture(const std::string& name);

/// fixtures/table1.json as a plan for `team_id` and `week`.
marksim::engine::WeeklyPlan table1_fixture(int team_id = 1, int week = 0);

/// A random plan that passes validate_plan against `remaining`. Covers
/// below-threshold budgets, zero-share products, repeated keywords and
/// market report requests.
marksim::engine::WeeklyPlan random_valid_plan(std::mt19937_64& rng, const marksim::SimulationConfig& config,
                                              int team_id, int week, std::int64_t remaining);

/// A chain of `blocks` blocks with 1..3 transactions each from mixed senders.
std::vector<marksim::ledger::Block> build_chain(std::size_t blocks, std::uint64_t seed = 1);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace testing_support
