// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/config.hpp>

#include <algorithm>
#include <set>
#include <string>

namespace marksim
{
namespace
{
template <typename Range>
std::optional<std::size_t> find_id(const Range& items, std::string_view id) noexcept
{
    for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i].id == id)
            return i;
    return std::nullopt;
}

bool unit_interval(double x) noexcept
{
    return x >= 0.0 && x <= 1.0;
}

}  // namespace

std::optional<std::size_t> SimulationConfig::channel_index(std::string_view id) const noexcept
{
    return find_id(channels, id);
}

std::optional<std::size_t> SimulationConfig::keyword_index(std::string_view id) const noexcept
{
    return find_id(keywords, id);
}

std::optional<std::size_t> SimulationConfig::segment_index(std::string_view id) const noexcept
{
    return find_id(segments, id);
}

SimulationConfig default_config()
{
    using engine::ChannelKind;
    using engine::Tier;

    SimulationConfig c;
    c.products = {{
        {Tier::low_end, "Phone 1", 1000},
        {Tier::mid_end, "Phone 2", 600},
        {Tier::high_end, "Phone 3", 300},
    }};

    c.channels = {
        {"website_content", "Web site content", ChannelKind::website, 100, 1.0},
        {"seo", "SEO", ChannelKind::search, 100, 1.0},
        {"facebook_content_production", "Facebook content production", ChannelKind::content_production, 100, 1.0},
        {"facebook_page_promotion", "Facebook page promotion", ChannelKind::promotion, 100, 1.0},
        {"facebook_content_promotion", "Facebook content promotion", ChannelKind::promotion, 100, 1.0},
        {"youtube_content_production", "Youtube content production", ChannelKind::content_production, 100, 1.0},
        {"youtube_content_promotion", "Youtube content promotion", ChannelKind::promotion, 100, 1.0},
        {"instagram_content_production", "Instagram content production", ChannelKind::content_production, 100, 1.0},
    };

    // Affinity columns: low_end, mid_end, high_end.
    c.keywords = {
        {"product_features", "Product features in general", {0.5, 0.6, 0.7}},
        {"photography", "Photography", {0.3, 0.7, 0.9}},
        {"memory", "Memory", {0.4, 0.6, 0.8}},
        {"distinctive_design", "Distinctive design", {0.2, 0.5, 0.9}},
        {"practical_design", "Practical design", {0.8, 0.6, 0.3}},
        {"technical_support_reminder", "Technical support reminder", {0.5, 0.5, 0.4}},
        {"brand_image", "Brand image related", {0.3, 0.5, 0.8}},
        {"product_differentiation", "Product differentiation", {0.4, 0.7, 0.6}},
        {"sales_promotion_support", "Sales promotion support", {0.9, 0.5, 0.2}},
    };

    c.segments = {
        {"students", "Students", {0.9, 0.5, 0.1}},
        {"young_professionals", "Young professionals", {0.4, 0.8, 0.6}},
        {"families", "Families", {0.7, 0.6, 0.2}},
        {"tech_enthusiasts", "Tech enthusiasts", {0.2, 0.6, 0.9}},
        {"business_users", "Business users", {0.3, 0.6, 0.8}},
    };

    c.global_metrics = {.likes = 1000, .post_engagement = 0.05, .page_views = 5000, .avg_post_reach = 1000};
    return c;
}

std::vector<Violation> check_config(const SimulationConfig& config)
{
    std::vector<Violation> out;
    auto fail = [&out](std::string field, std::string message) {
        out.push_back({"INVALID_CONFIG", std::move(field), std::move(message)});
    };

    std::set<engine::Tier> tiers;
    for (std::size_t p = 0; p < config.products.size(); ++p)
    {
        const auto& product = config.products[p];
        const auto field = "products/" + std::to_string(p);
        if (!tiers.insert(product.tier).second)
            fail(field + "/tier", "product tiers must be distinct");
        if (product.tier != static_cast<engine::Tier>(p))
            fail(field + "/tier", "products must be listed low_end, mid_end, high_end");
        if (product.base_demand <= 0)
            fail(field + "/base_demand", "base demand must be positive");
    }

    if (config.channels.empty())
        fail("channels", "at least one channel is required");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < config.channels.size(); ++i)
    {
        const auto& ch = config.channels[i];
        const auto field = "channels/" + std::to_string(i);
        if (ch.id.empty() || !ids.insert(ch.id).second)
            fail(field + "/id", "channel ids must be non-empty and unique");
        if (ch.threshold < 0)
            fail(field + "/threshold", "threshold must be non-negative");
        if (!(ch.base_efficiency > 0.0))
            fail(field + "/base_efficiency", "base efficiency must be positive");
    }

    if (config.keywords.empty())
        fail("keywords", "at least one keyword is required");
    ids.clear();
    for (std::size_t i = 0; i < config.keywords.size(); ++i)
    {
        const auto& kw = config.keywords[i];
        const auto field = "keywords/" + std::to_string(i);
        if (kw.id.empty() || !ids.insert(kw.id).second)
            fail(field + "/id", "keyword ids must be non-empty and unique");
        if (!std::ranges::all_of(kw.affinity, unit_interval))
            fail(field + "/affinity", "affinities must lie in [0,1]");
    }

    if (config.segments.empty())
        fail("segments", "at least one target segment is required");
    ids.clear();
    for (std::size_t i = 0; i < config.segments.size(); ++i)
    {
        const auto& seg = config.segments[i];
        const auto field = "segments/" + std::to_string(i);
        if (seg.id.empty() || !ids.insert(seg.id).second)
            fail(field + "/id", "segment ids must be non-empty and unique");
        if (!std::ranges::all_of(seg.preference, unit_interval))
            fail(field + "/preference", "preferences must lie in [0,1]");
    }

    const auto& k = config.constants;
    for (const auto& [name, value] : {std::pair{"alpha_focus", k.alpha_focus}, {"beta_synergy", k.beta_synergy},
                                      {"gamma_demand", k.gamma_demand}, {"e_ref", k.e_ref},
                                      {"lambda_loyalty", k.lambda_loyalty}, {"promoted_share_min", k.promoted_share_min},
                                      {"noise_low", k.noise_low}})
    {
        if (!(value > 0.0))
            fail(std::string("constants/") + name, "must be positive");
    }
    if (!(k.lambda_loyalty <= 1.0))
        fail("constants/lambda_loyalty", "must not exceed 1");
    if (!(k.noise_low <= 1.0 && k.noise_high >= 1.0))
        fail("constants/noise_band", "noise band must contain 1.0");
    if (k.market_report_price <= 0)
        fail("constants/market_report_price", "must be positive");

    const auto& g = config.gas;
    if (g.gas_price == 0 || g.gas_limit == 0 || g.base_tx_gas == 0 || g.gas_per_zero_byte == 0 ||
        g.gas_per_nonzero_byte == 0)
        fail("gas", "all gas schedule entries must be positive");
    if (g.base_tx_gas > g.gas_limit)
        fail("gas/gas_limit", "gas limit below the base transaction cost");

    const auto& m = config.global_metrics;
    if (m.likes < 0 || m.page_views < 0 || m.avg_post_reach < 0 || !unit_interval(m.post_engagement))
        fail("global_metrics", "metrics must be non-negative and engagement in [0,1]");

    if (config.total_budget_per_team < 0)
        fail("total_budget_per_team", "must be non-negative");
    if (config.n_weeks < 1)
        fail("n_weeks", "at least one scoring turn is required");
    if (config.ack_timeout_ms < 0)
        fail("ack_timeout_ms", "must be non-negative");
    return out;
}

}  // namespace marksim
