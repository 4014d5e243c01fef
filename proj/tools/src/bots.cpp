// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/serialize.hpp>
#include <marksim/ledger/crypto.hpp>
#include <marksim/tools/bots.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

namespace marksim::tools
{
using engine::kProductCount;
using engine::WeeklyPlan;
using nlohmann::json;

namespace
{
struct TableRow
{
    const char* channel;
    engine::PerProduct<int> split;
    std::int64_t budget;
    const char* keyword;
    const char* segment;
};

constexpr TableRow kTable1[] = {
    {"website_content", {50, 40, 10}, 500, "product_features", "young_professionals"},
    {"seo", {60, 30, 10}, 200, "photography", "young_professionals"},
    {"facebook_content_production", {40, 40, 20}, 500, "photography", "young_professionals"},
    {"facebook_page_promotion", {60, 30, 10}, 100, "brand_image", "students"},
    {"facebook_content_promotion", {70, 30, 0}, 200, "photography", "young_professionals"},
    {"youtube_content_production", {100, 0, 0}, 500, "photography", "young_professionals"},
    {"youtube_content_promotion", {100, 0, 0}, 100, "photography", "young_professionals"},
    {"instagram_content_production", {50, 40, 10}, 300, "photography", "young_professionals"},
};

/// Index in [0, n).
std::size_t pick(std::mt19937_64& rng, std::size_t n)
{
    return static_cast<std::size_t>(rng() % n);
}

engine::PerProduct<int> random_split(std::mt19937_64& rng)
{
    const int a = static_cast<int>(pick(rng, 101));
    const int b = static_cast<int>(pick(rng, static_cast<std::size_t>(101 - a)));
    engine::PerProduct<int> split{a, b, 100 - a - b};
    for (std::size_t i = kProductCount - 1; i > 0; --i)
        std::swap(split[i], split[pick(rng, i + 1)]);
    return split;
}

WeeklyPlan random_plan(const SimulationConfig& config, int team_id, int week, std::int64_t weekly,
                       std::int64_t remaining, std::mt19937_64& rng)
{
    WeeklyPlan plan{team_id, week, {}, false};
    std::vector<std::size_t> channels(config.channels.size());
    std::iota(channels.begin(), channels.end(), std::size_t{0});
    for (std::size_t i = channels.size() - 1; i > 0; --i)
        std::swap(channels[i], channels[pick(rng, i + 1)]);
    channels.resize(1 + pick(rng, channels.size()));

    std::vector<std::int64_t> weights;
    for (std::size_t i = 0; i < channels.size(); ++i)
        weights.push_back(1 + static_cast<std::int64_t>(pick(rng, 100)));
    const auto weight_sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});

    std::int64_t total = 0;
    for (std::size_t i = 0; i < channels.size(); ++i)
    {
        engine::ChannelAllocation a;
        a.channel_id = config.channels[channels[i]].id;
        a.budget = weekly * weights[i] / weight_sum;
        a.split = random_split(rng);
        a.keyword_id = config.keywords[pick(rng, config.keywords.size())].id;
        a.segment_id = config.segments[pick(rng, config.segments.size())].id;
        total += a.budget;
        plan.allocations.push_back(std::move(a));
    }
    plan.market_report_requested =
        pick(rng, 5) == 0 && total + config.constants.market_report_price <= remaining;
    return plan;
}

WeeklyPlan focused_plan(const SimulationConfig& config, int team_id, int week, std::int64_t weekly)
{
    const auto product = static_cast<std::size_t>(team_id - 1) % kProductCount;
    const auto keyword = std::ranges::max_element(config.keywords, {}, [&](const engine::Keyword& k) {
        return k.affinity[product];
    });
    const auto segment = std::ranges::max_element(config.segments, {}, [&](const engine::TargetSegment& s) {
        return s.preference[product];
    });
    WeeklyPlan plan{team_id, week, {}, false};
    const auto per_channel = weekly / static_cast<std::int64_t>(config.channels.size());
    for (const auto& ch : config.channels)
    {
        engine::ChannelAllocation a;
        a.channel_id = ch.id;
        a.budget = per_channel;
        a.split[product] = 100;
        a.keyword_id = keyword->id;
        a.segment_id = segment->id;
        plan.allocations.push_back(std::move(a));
    }
    return plan;
}

}  // namespace

std::string_view to_string(Strategy s) noexcept
{
    switch (s)
    {
    case Strategy::random_valid:
        return "random_valid";
    case Strategy::focus_one_product:
        return "focus_one_product";
    case Strategy::table1_replay:
        return "table1_replay";
    }
    return "unknown";
}

std::optional<Strategy> strategy_from_string(std::string_view s) noexcept
{
    for (const auto k : {Strategy::random_valid, Strategy::focus_one_product, Strategy::table1_replay})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

WeeklyPlan table1_plan(int team_id, int week)
{
    WeeklyPlan plan{team_id, week, {}, false};
    for (const auto& row : kTable1)
        plan.allocations.push_back({row.channel, row.budget, row.split, row.keyword, row.segment});
    return plan;
}

std::mt19937_64 strategy_rng(std::uint64_t seed, int team_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(team_id)};
    return std::mt19937_64(seq);
}

WeeklyPlan make_plan(Strategy strategy, const SimulationConfig& config, int team_id, int week,
                     std::int64_t remaining, int turns_left, std::mt19937_64& rng)
{
    const auto weekly = std::max<std::int64_t>(0, remaining) / std::max(1, turns_left);
    switch (strategy)
    {
    case Strategy::random_valid:
        return random_plan(config, team_id, week, weekly, remaining, rng);
    case Strategy::focus_one_product:
        return focused_plan(config, team_id, week, weekly);
    case Strategy::table1_replay:
    {
        auto plan = table1_plan(team_id, week);
        std::int64_t total = 0;
        for (const auto& a : plan.allocations)
            total += a.budget;
        if (total > remaining)
            plan.allocations.clear();
        return plan;
    }
    }
    return WeeklyPlan{team_id, week, {}, false};
}

BotSummary run_bots(SimClient& client, const SimulationConfig& config, const BotOptions& options)
{
    struct Bot
    {
        int team_id = 0;
        std::string token;
        ledger::KeyPair keys;
        std::mt19937_64 rng;
    };

    std::vector<Bot> bots;
    for (int i = 1; i <= options.teams; ++i)
    {
        const auto r = client.register_team("bot-" + std::to_string(i));
        const auto seed = ledger::fixed_from_hex<32>(r.at("secret_key").get<std::string>());
        if (!seed)
            throw Error("BAD_RESPONSE", "registration returned a malformed key");
        const auto team_id = r.at("team_id").get<int>();
        bots.push_back(Bot{team_id, r.at("token").get<std::string>(), ledger::KeyPair(*seed),
                           strategy_rng(options.seed, team_id)});
    }
    if (bots.empty())
        throw Error("INVALID_ARGUMENT", "at least one bot team is required");

    BotSummary summary;
    std::uint64_t acked_height = 0;
    auto acknowledge_pending = [&] {
        for (const auto& b : client.blocks(acked_height, std::nullopt, bots.front().token))
        {
            const auto hash_hex = b.at("block_hash").get<std::string>();
            const auto hash = ledger::fixed_from_hex<32>(hash_hex);
            const auto start = std::chrono::steady_clock::now();
            json status;
            for (const auto& bot : bots)
                status = client.acknowledge(hash_hex, bot.team_id, ledger::to_hex(bot.keys.sign(*hash)), bot.token);
            if (status.at("state").get<std::string>().starts_with("final"))
                summary.finality_ms.push_back(
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
            acked_height = b.at("height").get<std::uint64_t>() + 1;
        }
    };

    auto status = client.status(client.admin_token());
    while (status.at("phase").get<std::string>() != "finished")
    {
        const auto week = status.at("week").get<int>();
        const int scoring_left = config.last_week() - week + 1 - (config.is_test_week(week) ? 1 : 0);
        for (auto& bot : bots)
        {
            const auto own = client.standings(bot.token).at("own");
            const auto remaining = own.at("remaining_budget").get<std::int64_t>();
            const auto plan = make_plan(options.strategy, config, bot.team_id, week, remaining,
                                        std::max(1, scoring_left), bot.rng);
            client.submit_plan(engine::plan_to_json(plan), bot.token);
        }
        client.finalize(week);
        ++summary.turns;
        if (options.acknowledge)
            acknowledge_pending();
        status = client.status(client.admin_token());
    }

    summary.standings = client.standings(client.admin_token());
    for (const auto& b : client.blocks(std::nullopt, std::nullopt, client.admin_token()))
        summary.block_hashes.push_back(b.at("block_hash").get<std::string>());
    return summary;
}

std::string format_summary(const BotSummary& summary)
{
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-5s %-12s %12s %10s %24s\n", "rank", "team", "name", "total_sales",
                  "budget", "fees_wei");
    out += line;
    for (const auto& row : summary.standings.at("teams"))
    {
        std::snprintf(line, sizeof line, "%-4d %-5d %-12s %12lld %10lld %24s\n", row.at("rank").get<int>(),
                      row.at("team_id").get<int>(), row.at("name").get<std::string>().c_str(),
                      static_cast<long long>(row.at("total_sales").get<std::int64_t>()),
                      static_cast<long long>(row.at("remaining_budget").get<std::int64_t>()),
                      row.at("fees_wei").get<std::string>().c_str());
        out += line;
    }
    std::snprintf(line, sizeof line, "turns %d, blocks %zu, head %s\n", summary.turns, summary.block_hashes.size(),
                  summary.block_hashes.empty() ? "-" : summary.block_hashes.back().c_str());
    out += line;
    return out;
}

}  // namespace marksim::tools
