// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/engine.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace marksim::engine
{
namespace
{
constexpr std::array<std::string_view, kProductCount> kProductIds{"low_end", "mid_end", "high_end"};

std::string field(std::size_t i, std::string_view name)
{
    return "allocations/" + std::to_string(i) + "/" + std::string(name);
}

}  // namespace

std::string_view to_string(Tier tier) noexcept
{
    return kProductIds[static_cast<std::size_t>(tier)];
}

std::string_view to_string(ChannelKind kind) noexcept
{
    switch (kind)
    {
    case ChannelKind::content_production:
        return "content_production";
    case ChannelKind::promotion:
        return "promotion";
    case ChannelKind::search:
        return "search";
    case ChannelKind::website:
        return "website";
    }
    return "website";
}

std::string_view to_string(TurnLabel label) noexcept
{
    return label == TurnLabel::daily ? "daily" : "weekly";
}

std::optional<Tier> tier_from_string(std::string_view s) noexcept
{
    if (const auto p = product_index(s))
        return static_cast<Tier>(*p);
    return std::nullopt;
}

std::optional<ChannelKind> channel_kind_from_string(std::string_view s) noexcept
{
    for (auto kind : {ChannelKind::content_production, ChannelKind::promotion, ChannelKind::search,
                      ChannelKind::website})
        if (to_string(kind) == s)
            return kind;
    return std::nullopt;
}

std::optional<TurnLabel> turn_label_from_string(std::string_view s) noexcept
{
    if (s == "daily")
        return TurnLabel::daily;
    if (s == "weekly")
        return TurnLabel::weekly;
    return std::nullopt;
}

std::string_view product_id(std::size_t p) noexcept
{
    return kProductIds.at(p);
}

std::optional<std::size_t> product_index(std::string_view id) noexcept
{
    for (std::size_t p = 0; p < kProductCount; ++p)
        if (kProductIds[p] == id)
            return p;
    return std::nullopt;
}

std::int64_t ValidatedPlan::total_budget() const noexcept
{
    std::int64_t total = 0;
    for (const auto& a : allocations_)
        total += a.budget;
    return total;
}

struct PlanFactory
{
    static ValidatedPlan make(const WeeklyPlan& source, std::vector<ResolvedAllocation> allocations)
    {
        std::ranges::sort(allocations, {}, &ResolvedAllocation::channel);
        ValidatedPlan plan;
        plan.team_id_ = source.team_id;
        plan.week_ = source.week;
        plan.allocations_ = std::move(allocations);
        plan.market_report_requested_ = source.market_report_requested;
        plan.source_ = source;
        return plan;
    }
};

PlanValidation validate_plan(const WeeklyPlan& plan, const SimulationConfig& config, const TeamState& state)
{
    PlanValidation result;
    auto& out = result.violations;
    std::vector<ResolvedAllocation> resolved;
    std::set<std::size_t> seen;
    __extension__ __int128 total = 0;

    if (plan.team_id != state.team_id)
        out.push_back({"TEAM_MISMATCH", "team_id", "plan belongs to team " + std::to_string(plan.team_id)});

    for (std::size_t i = 0; i < plan.allocations.size(); ++i)
    {
        const auto& a = plan.allocations[i];
        ResolvedAllocation r;
        bool ok = true;

        if (const auto c = config.channel_index(a.channel_id))
        {
            r.channel = *c;
            if (!seen.insert(*c).second)
            {
                out.push_back({"DUPLICATE_CHANNEL", field(i, "channel_id"), "channel '" + a.channel_id + "' allocated twice"});
                ok = false;
            }
        }
        else
        {
            out.push_back({"UNKNOWN_CHANNEL", field(i, "channel_id"), "unknown channel '" + a.channel_id + "'"});
            ok = false;
        }

        if (a.budget < 0)
        {
            out.push_back({"NEGATIVE_BUDGET", field(i, "budget"), "budget must be non-negative"});
            ok = false;
        }
        else
        {
            total += a.budget;
        }

        int sum = 0;
        bool in_range = true;
        for (const int pct : a.split)
        {
            sum += pct;
            in_range = in_range && pct >= 0 && pct <= 100;
        }
        if (!in_range || sum != 100)
        {
            out.push_back({"SPLIT_NOT_100", field(i, "split"),
                           "product split sums to " + std::to_string(sum) + "%, expected 100%"});
            ok = false;
        }

        if (const auto k = config.keyword_index(a.keyword_id))
            r.keyword = *k;
        else
        {
            out.push_back({"UNKNOWN_KEYWORD", field(i, "keyword_id"), "unknown keyword '" + a.keyword_id + "'"});
            ok = false;
        }

        if (const auto s = config.segment_index(a.segment_id))
            r.segment = *s;
        else
        {
            out.push_back({"UNKNOWN_SEGMENT", field(i, "segment_id"), "unknown segment '" + a.segment_id + "'"});
            ok = false;
        }

        if (ok)
        {
            r.budget = a.budget;
            r.split = a.split;
            resolved.push_back(r);
        }
    }

    if (plan.market_report_requested)
        total += config.constants.market_report_price;
    if (total > state.remaining_budget)
        out.push_back({"BUDGET_EXCEEDED", "allocations",
                       "plan costs " + std::to_string(static_cast<long long>(total)) + " EUR, " +
                           std::to_string(state.remaining_budget) + " EUR remaining"});

    if (out.empty())
        result.plan = PlanFactory::make(plan, std::move(resolved));
    return result;
}

ValidatedPlan empty_plan(int team_id, int week)
{
    WeeklyPlan source;
    source.team_id = team_id;
    source.week = week;
    return PlanFactory::make(source, {});
}

TeamState initial_team_state(int team_id, const SimulationConfig& config)
{
    TeamState s;
    s.team_id = team_id;
    s.remaining_budget = config.total_budget_per_team;
    s.loyalty.fill(0.5);
    s.social = config.global_metrics;
    return s;
}

SpendMatrix effective_spend(const ValidatedPlan& plan, const SimulationConfig& config)
{
    SpendMatrix spend(config.channels.size(), PerProduct<double>{});
    for (const auto& a : plan.allocations())
    {
        if (a.budget < config.channels[a.channel].threshold)
            continue;
        for (std::size_t p = 0; p < kProductCount; ++p)
            spend[a.channel][p] = static_cast<double>(a.budget * a.split[p]) / 100.0;
    }
    return spend;
}

PerProduct<double> product_totals(const SpendMatrix& spend) noexcept
{
    PerProduct<double> totals{};
    for (const auto& row : spend)
        for (std::size_t p = 0; p < kProductCount; ++p)
            totals[p] += row[p];
    return totals;
}

double focus_multiplier(const SpendMatrix& spend, const EngineConstants& constants) noexcept
{
    const auto totals = product_totals(spend);
    const double grand = totals[0] + totals[1] + totals[2];
    if (grand <= 0.0)
        return 1.0;
    double hhi = 0.0;
    for (const double t : totals)
        hhi += (t / grand) * (t / grand);
    return 1.0 + constants.alpha_focus * (hhi - 1.0 / 3.0) / (2.0 / 3.0);
}

std::optional<std::size_t> promoted_product(const SpendMatrix& spend, const EngineConstants& constants) noexcept
{
    const auto totals = product_totals(spend);
    const double grand = totals[0] + totals[1] + totals[2];
    if (grand <= 0.0)
        return std::nullopt;
    const auto top = static_cast<std::size_t>(std::ranges::max_element(totals) - totals.begin());
    for (std::size_t p = 0; p < kProductCount; ++p)
        if (p != top && totals[p] == totals[top])
            return std::nullopt;
    if (totals[top] / grand < constants.promoted_share_min)
        return std::nullopt;
    return top;
}

PerProduct<int> update_streak(const PerProduct<int>& previous, const SpendMatrix& spend,
                              const EngineConstants& constants) noexcept
{
    PerProduct<int> next{};
    if (const auto p = promoted_product(spend, constants))
        next[*p] = previous[*p] + 1;
    return next;
}

double streak_multiplier(int weeks) noexcept
{
    if (weeks <= 1)
        return 1.0;
    if (weeks <= 3)
        return 1.2;
    if (weeks == 4)
        return 1.0;
    if (weeks == 5)
        return 0.75;
    if (weeks == 6)
        return 0.55;
    return std::max(0.05, 0.55 - 0.20 * (weeks - 6));
}

double synergy_multiplier(const ValidatedPlan& plan, const SpendMatrix& spend, const EngineConstants& constants) noexcept
{
    std::map<std::size_t, int> keyword_counts;
    int active = 0;
    for (const auto& a : plan.allocations())
    {
        const auto& row = spend[a.channel];
        if (row[0] + row[1] + row[2] <= 0.0)
            continue;
        ++active;
        ++keyword_counts[a.keyword];
    }
    if (active <= 1)
        return 1.0;
    int modal = 0;
    for (const auto& [_, n] : keyword_counts)
        modal = std::max(modal, n);
    return 1.0 + constants.beta_synergy * static_cast<double>(modal - 1) / static_cast<double>(active - 1);
}

int quality_score(double affinity, double preference) noexcept
{
    const auto q = std::lround(5.0 + 3.0 * affinity + 2.0 * preference);
    return static_cast<int>(std::clamp(q, 1L, 10L));
}

int quality_score(const Keyword& keyword, const TargetSegment& segment, std::size_t product) noexcept
{
    return quality_score(keyword.affinity[product], segment.preference[product]);
}

double channel_effect(const Channel& channel, double spend, double affinity, int quality, double preference) noexcept
{
    double modifier = 1.0;
    if (channel.kind == ChannelKind::search)
        modifier = quality / 5.0;
    else if (channel.kind == ChannelKind::promotion)
        modifier = 0.5 + preference;
    return spend * channel.base_efficiency * (0.5 + affinity) * modifier;
}

std::int64_t compute_sales(double pressure, int streak, double loyalty, const ProductModel& product,
                           const EngineConstants& constants, double noise) noexcept
{
    const double demand = static_cast<double>(product.base_demand) *
                          (1.0 + constants.gamma_demand * std::log1p(pressure / constants.e_ref)) *
                          streak_multiplier(streak) * (0.8 + 0.4 * loyalty) * noise;
    return std::max<std::int64_t>(0, std::llround(demand));
}

PerProduct<double> update_loyalty(const PerProduct<double>& loyalty,
                                  const PerProduct<std::optional<double>>& content_quality,
                                  const EngineConstants& constants) noexcept
{
    const double lambda = constants.lambda_loyalty;
    PerProduct<double> next{};
    for (std::size_t p = 0; p < kProductCount; ++p)
    {
        double l = lambda * loyalty[p];
        if (content_quality[p])
            l += (1.0 - lambda) * (*content_quality[p] / 10.0);
        next[p] = std::clamp(l, 0.0, 1.0);
    }
    return next;
}

SocialMetrics update_social(const SocialMetrics& social, double promo_spend, double promo_quality,
                            const EngineConstants& constants) noexcept
{
    if (promo_spend <= 0.0)
        return social;
    const double lift = promo_spend / constants.e_ref;
    SocialMetrics next;
    next.avg_post_reach = std::llround(static_cast<double>(social.avg_post_reach) * (1.0 + lift));
    next.page_views = std::llround(static_cast<double>(social.page_views) * (1.0 + lift / 2.0));
    next.post_engagement = std::clamp(social.post_engagement * (promo_quality / 5.0), 0.0, 1.0);
    next.likes = social.likes + std::llround(promo_spend / 10.0);
    return next;
}

double sales_noise(const SimulationConfig& config, std::uint64_t seed, int week, int team_id,
                   std::size_t product) noexcept
{
    if (config.deterministic)
        return 1.0;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(week), static_cast<std::uint32_t>(team_id),
                      static_cast<std::uint32_t>(product)};
    std::mt19937_64 rng(seq);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto& k = config.constants;
    return k.noise_low + (k.noise_high - k.noise_low) * u;
}

namespace
{
std::string eur(double amount)
{
    return std::to_string(std::llround(amount)) + " EUR";
}

std::vector<std::string> feedback_lines(const TurnOutcome& o, const SpendMatrix& spend, const ValidatedPlan& plan,
                                        const SimulationConfig& config)
{
    std::vector<std::string> lines;

    const bool any_pressure = std::ranges::any_of(o.pressures, [](double e) { return e > 0.0; });
    std::size_t top_product = 0;
    if (any_pressure)
    {
        top_product = static_cast<std::size_t>(std::ranges::max_element(o.pressures) - o.pressures.begin());
        lines.push_back("Salesforce: " + config.products[top_product].name + " led the turn with " +
                        std::to_string(o.sales[top_product]) + " units sold.");
    }
    else
    {
        lines.push_back("Salesforce: no effective campaigns this turn; sales ran on brand loyalty alone.");
    }

    std::vector<double> keyword_spend(config.keywords.size(), 0.0);
    for (const auto& a : plan.allocations())
    {
        const auto& row = spend[a.channel];
        keyword_spend[a.keyword] += row[0] + row[1] + row[2];
    }
    const auto top_kw_it = std::ranges::max_element(keyword_spend);
    if (any_pressure && top_kw_it != keyword_spend.end() && *top_kw_it > 0.0)
    {
        const auto& kw = config.keywords[static_cast<std::size_t>(top_kw_it - keyword_spend.begin())];
        const auto& product = config.products[top_product].name;
        const double fit = kw.affinity[top_product];
        if (fit >= 0.7)
            lines.push_back("Customers respond well to '" + kw.name + "' messaging for " + product + ".");
        else if (fit >= 0.4)
            lines.push_back("'" + kw.name + "' messaging gets a moderate response for " + product + ".");
        else
            lines.push_back("'" + kw.name + "' messaging does not resonate with " + product + " buyers.");
    }

    for (const auto& a : plan.allocations())
    {
        const auto& ch = config.channels[a.channel];
        if (a.budget > 0 && a.budget < ch.threshold)
            lines.push_back(ch.name + ": spending below the " + eur(static_cast<double>(ch.threshold)) +
                            " threshold had no impact.");
    }

    for (std::size_t p = 0; p < kProductCount; ++p)
    {
        const int s = o.streaks[p];
        const auto& name = config.products[p].name;
        if (s == 2 || s == 3)
            lines.push_back("Consistent promotion of " + name + " is paying off.");
        else if (s == 4)
            lines.push_back("Promoting " + name + " again brought no additional lift.");
        else if (s >= 5)
            lines.push_back("Over-promotion of " + name + " is hurting results (" +
                            std::to_string(std::lround((1.0 - o.streak_multipliers[p]) * 100.0)) + "% penalty).");
    }

    for (std::size_t p = 0; p < kProductCount; ++p)
        if (o.loyalty_after[p] < o.loyalty_before[p])
            lines.push_back("Brand loyalty for " + config.products[p].name + " is slipping without content support.");

    return lines;
}

}  // namespace

TurnResult advance_turn(const MarketState& market, const std::map<int, ValidatedPlan>& plans,
                        const SimulationConfig& config, std::uint64_t seed)
{
    if (config.channels.empty() || config.keywords.empty() || config.segments.empty())
        throw Error("MISSING_CONFIG", "channels, keywords and segments must be configured");

    for (const auto& [team_id, plan] : plans)
    {
        if (plan.week() != market.week)
            throw Error("WEEK_MISMATCH", "plan for team " + std::to_string(team_id) + " targets week " +
                                             std::to_string(plan.week()) + ", market is at week " +
                                             std::to_string(market.week));
        if (std::ranges::none_of(market.teams, [&](const TeamState& t) { return t.team_id == team_id; }))
            throw Error("UNKNOWN_TEAM", "plan for unregistered team " + std::to_string(team_id));
    }

    const auto& k = config.constants;
    TurnResult result;
    result.next.week = market.week + 1;

    for (const auto& state : market.teams)
    {
        const auto found = plans.find(state.team_id);
        const ValidatedPlan plan = found != plans.end() ? found->second : empty_plan(state.team_id, market.week);

        TurnOutcome o;
        o.team_id = state.team_id;
        o.week = market.week;
        o.effective_spend = effective_spend(plan, config);
        const auto& spend = o.effective_spend;
        o.focus_multiplier = focus_multiplier(spend, k);
        o.synergy_multiplier = synergy_multiplier(plan, spend, k);
        o.quality_scores.assign(config.channels.size(), std::nullopt);

        PerProduct<double> raw_effect{};
        PerProduct<double> content_quality_sum{};
        PerProduct<int> content_quality_n{};
        double promo_spend = 0.0;
        double promo_quality_sum = 0.0;
        int promo_quality_n = 0;

        for (const auto& a : plan.allocations())
        {
            const auto& ch = config.channels[a.channel];
            const auto& kw = config.keywords[a.keyword];
            const auto& seg = config.segments[a.segment];
            PerProduct<int> q{};
            for (std::size_t p = 0; p < kProductCount; ++p)
            {
                q[p] = quality_score(kw, seg, p);
                const double s = spend[a.channel][p];
                raw_effect[p] += channel_effect(ch, s, kw.affinity[p], q[p], seg.preference[p]);
                if (s <= 0.0)
                    continue;
                if (ch.kind == ChannelKind::content_production)
                {
                    content_quality_sum[p] += q[p];
                    ++content_quality_n[p];
                }
                else if (ch.kind == ChannelKind::promotion)
                {
                    promo_spend += s;
                    promo_quality_sum += q[p];
                    ++promo_quality_n;
                }
            }
            o.quality_scores[a.channel] = q;
        }

        o.streaks = update_streak(state.streaks, spend, k);
        o.loyalty_before = state.loyalty;
        for (std::size_t p = 0; p < kProductCount; ++p)
        {
            o.pressures[p] = o.focus_multiplier * o.synergy_multiplier * raw_effect[p];
            o.streak_multipliers[p] = streak_multiplier(o.streaks[p]);
            o.noise[p] = sales_noise(config, seed, market.week, state.team_id, p);
            o.sales[p] = compute_sales(o.pressures[p], o.streaks[p], state.loyalty[p], config.products[p], k, o.noise[p]);
        }

        PerProduct<std::optional<double>> content_quality{};
        for (std::size_t p = 0; p < kProductCount; ++p)
            if (content_quality_n[p] > 0)
                content_quality[p] = content_quality_sum[p] / content_quality_n[p];
        o.loyalty_after = update_loyalty(state.loyalty, content_quality, k);

        o.social_before = state.social;
        const double promo_quality = promo_quality_n > 0 ? promo_quality_sum / promo_quality_n : 5.0;
        o.social_after = update_social(state.social, promo_spend, promo_quality, k);

        o.budget_debited = plan.total_budget() + (plan.market_report_requested() ? k.market_report_price : 0);
        if (o.budget_debited > state.remaining_budget)
            throw Error("BUDGET_EXCEEDED", "team " + std::to_string(state.team_id) + " cannot cover " +
                                               std::to_string(o.budget_debited) + " EUR");
        o.remaining_budget = state.remaining_budget - o.budget_debited;
        o.feedback = feedback_lines(o, spend, plan, config);

        TeamState next = state;
        next.remaining_budget = o.remaining_budget;
        next.streaks = o.streaks;
        next.loyalty = o.loyalty_after;
        next.social = o.social_after;
        result.next.teams.push_back(next);
        result.outcomes.emplace(state.team_id, std::move(o));
    }
    return result;
}

}  // namespace marksim::engine
