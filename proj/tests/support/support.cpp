// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/support.hpp"

#include <marksim/engine/serialize.hpp>
#include <marksim/ledger/canonical.hpp>

#include <atomic>
#include <fstream>
#include <sstream>

namespace testing_support
{
namespace fs = std::filesystem;

TempDir::TempDir()
{
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("marksim-test-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

nlohmann::json load_fixture(const std::string& name)
{
    return nlohmann::json::parse(read_text(fs::path(MARKSIM_FIXTURE_DIR) / name));
}

marksim::engine::WeeklyPlan table1_fixture(int team_id, int week)
{
    auto doc = load_fixture("table1.json");
    doc["team_id"] = team_id;
    doc["week"] = week;
    return marksim::engine::plan_from_json(doc);
}

marksim::engine::WeeklyPlan random_valid_plan(std::mt19937_64& rng, const marksim::SimulationConfig& config,
                                              int team_id, int week, std::int64_t remaining)
{
    auto below = [&](std::uint64_t n) { return rng() % n; };
    marksim::engine::WeeklyPlan plan{team_id, week, {}, false};

    std::vector<std::size_t> channels;
    for (std::size_t c = 0; c < config.channels.size(); ++c)
        if (below(3) != 0)
            channels.push_back(c);

    const std::int64_t pool = remaining > 0 ? static_cast<std::int64_t>(below(static_cast<std::uint64_t>(remaining) + 1)) : 0;
    std::int64_t left = pool;
    const auto keyword_pool = 1 + below(config.keywords.size());
    for (const auto c : channels)
    {
        marksim::engine::ChannelAllocation a;
        a.channel_id = config.channels[c].id;
        const auto mode = below(6);
        if (mode == 0)
            a.budget = std::min<std::int64_t>(left, config.channels[c].threshold - 1 - static_cast<std::int64_t>(below(50)));
        else if (mode == 1)
            a.budget = std::min<std::int64_t>(left, config.channels[c].threshold);
        else
            a.budget = left > 0 ? static_cast<std::int64_t>(below(static_cast<std::uint64_t>(left) / 2 + 1)) : 0;
        a.budget = std::max<std::int64_t>(0, a.budget);
        left -= a.budget;

        const auto shape = below(4);
        if (shape == 0)
            a.split[below(3)] = 100;
        else if (shape == 1)
        {
            const int x = static_cast<int>(below(101));
            a.split = {x, 100 - x, 0};
        }
        else
        {
            const int x = static_cast<int>(below(101));
            const int y = static_cast<int>(below(static_cast<std::uint64_t>(101 - x)));
            a.split = {x, y, 100 - x - y};
        }
        a.keyword_id = config.keywords[below(keyword_pool)].id;
        a.segment_id = config.segments[below(config.segments.size())].id;
        plan.allocations.push_back(std::move(a));
    }
    plan.market_report_requested = left >= config.constants.market_report_price && below(4) == 0;
    return plan;
}

std::vector<marksim::ledger::Block> build_chain(std::size_t blocks, std::uint64_t seed)
{
    using namespace marksim::ledger;
    std::mt19937_64 rng(seed);
    Ledger ledger;
    for (std::size_t h = 0; h < blocks; ++h)
    {
        std::vector<Transaction> txs;
        const auto n = 1 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto& sender = h == 0 ? ledger.coordinator() : ledger.mock_accounts()[rng() % kMockAccountCount];
            const nlohmann::json payload{{"height", h}, {"index", i}, {"value", static_cast<double>(rng() % 1000) / 7.0}};
            txs.push_back(ledger.build_transaction(sender.address, i == 0 ? TxKind::turn_report : TxKind::market_report_purchase,
                                                   canonical_encoding(payload)));
        }
        ledger.append_block(std::move(txs), static_cast<int>(h), h == 1, 0);
    }
    return ledger.blocks();
}

}  // namespace testing_support
