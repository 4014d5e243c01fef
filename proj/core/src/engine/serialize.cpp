// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/serialize.hpp>
#include <marksim/error.hpp>

#include <limits>

namespace marksim::engine
{
using nlohmann::json;

namespace
{
class DocReader
{
public:
    explicit DocReader(std::vector<Violation>& out) : out_(out) {}

    template <typename T>
    bool integer(const json& obj, const char* key, const std::string& where, T& dst, bool required = true)
    {
        const auto it = obj.find(key);
        if (it == obj.end())
        {
            if (required)
                fail(where + key, std::string("missing field '") + key + "'");
            return false;
        }
        if (!it->is_number_integer())
        {
            fail(where + key, std::string("'") + key + "' must be an integer");
            return false;
        }
        const auto v = it->get<std::int64_t>();
        if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max())
        {
            fail(where + key, std::string("'") + key + "' out of range");
            return false;
        }
        dst = static_cast<T>(v);
        return true;
    }

    bool string(const json& obj, const char* key, const std::string& where, std::string& dst)
    {
        const auto it = obj.find(key);
        if (it == obj.end() || !it->is_string())
        {
            fail(where + key, std::string("'") + key + "' must be a string");
            return false;
        }
        dst = it->get<std::string>();
        return true;
    }

    void fail(std::string field, std::string message)
    {
        out_.push_back({"INVALID_PLAN_DOCUMENT", std::move(field), std::move(message)});
    }

private:
    std::vector<Violation>& out_;
};

}  // namespace

WeeklyPlan plan_from_json(const json& doc)
{
    std::vector<Violation> out;
    DocReader r(out);
    WeeklyPlan plan;

    if (!doc.is_object())
        throw Error("INVALID_PLAN_DOCUMENT", "plan must be a JSON object");

    r.integer(doc, "team_id", "", plan.team_id);
    r.integer(doc, "week", "", plan.week);
    if (const auto it = doc.find("market_report_requested"); it != doc.end())
    {
        if (it->is_boolean())
            plan.market_report_requested = it->get<bool>();
        else
            r.fail("market_report_requested", "'market_report_requested' must be a boolean");
    }

    const auto allocs = doc.find("allocations");
    if (allocs == doc.end() || !allocs->is_array())
    {
        r.fail("allocations", "'allocations' must be an array");
    }
    else
    {
        for (std::size_t i = 0; i < allocs->size(); ++i)
        {
            const auto& a = (*allocs)[i];
            const auto where = "allocations/" + std::to_string(i) + "/";
            if (!a.is_object())
            {
                r.fail(where, "allocation must be an object");
                continue;
            }
            ChannelAllocation alloc;
            r.string(a, "channel_id", where, alloc.channel_id);
            r.integer(a, "budget", where, alloc.budget);
            r.string(a, "keyword_id", where, alloc.keyword_id);
            r.string(a, "segment_id", where, alloc.segment_id);

            const auto split = a.find("split");
            if (split == a.end() || !split->is_object())
            {
                r.fail(where + "split", "'split' must be an object keyed by product id");
            }
            else
            {
                for (const auto& [key, value] : split->items())
                {
                    const auto p = product_index(key);
                    if (!p)
                        r.fail(where + "split/" + key, "unknown product '" + key + "'");
                    else
                        r.integer(*split, key.c_str(), where + "split/", alloc.split[*p]);
                }
            }
            plan.allocations.push_back(std::move(alloc));
        }
    }

    if (!out.empty())
        throw Error("INVALID_PLAN_DOCUMENT", "plan document is malformed", std::move(out));
    return plan;
}

json plan_to_json(const WeeklyPlan& plan)
{
    json allocations = json::array();
    for (const auto& a : plan.allocations)
    {
        allocations.push_back({
            {"channel_id", a.channel_id},
            {"budget", a.budget},
            {"split", per_product_json(a.split)},
            {"keyword_id", a.keyword_id},
            {"segment_id", a.segment_id},
        });
    }
    return {
        {"team_id", plan.team_id},
        {"week", plan.week},
        {"allocations", std::move(allocations)},
        {"market_report_requested", plan.market_report_requested},
    };
}

json metrics_to_json(const SocialMetrics& m)
{
    return {
        {"likes", m.likes},
        {"post_engagement", m.post_engagement},
        {"page_views", m.page_views},
        {"avg_post_reach", m.avg_post_reach},
    };
}

SocialMetrics metrics_from_json(const json& doc)
{
    return {
        .likes = doc.at("likes").get<std::int64_t>(),
        .post_engagement = doc.at("post_engagement").get<double>(),
        .page_views = doc.at("page_views").get<std::int64_t>(),
        .avg_post_reach = doc.at("avg_post_reach").get<std::int64_t>(),
    };
}

json team_state_to_json(const TeamState& s)
{
    return {
        {"team_id", s.team_id},
        {"remaining_budget", s.remaining_budget},
        {"streaks", per_product_json(s.streaks)},
        {"loyalty", per_product_json(s.loyalty)},
        {"social", metrics_to_json(s.social)},
    };
}

TeamState team_state_from_json(const json& doc)
{
    TeamState s;
    s.team_id = doc.at("team_id").get<int>();
    s.remaining_budget = doc.at("remaining_budget").get<std::int64_t>();
    for (std::size_t p = 0; p < kProductCount; ++p)
    {
        const std::string id(product_id(p));
        s.streaks[p] = doc.at("streaks").at(id).get<int>();
        s.loyalty[p] = doc.at("loyalty").at(id).get<double>();
    }
    s.social = metrics_from_json(doc.at("social"));
    return s;
}

json outcome_to_json(const TurnOutcome& o, const SimulationConfig& config)
{
    json spend = json::object();
    json quality = json::object();
    for (std::size_t c = 0; c < config.channels.size(); ++c)
    {
        const auto& id = config.channels[c].id;
        if (c < o.quality_scores.size() && o.quality_scores[c])
        {
            spend[id] = per_product_json(o.effective_spend[c]);
            quality[id] = per_product_json(*o.quality_scores[c]);
        }
    }
    return {
        {"team_id", o.team_id},
        {"week", o.week},
        {"effective_spend", std::move(spend)},
        {"pressures", per_product_json(o.pressures)},
        {"sales", per_product_json(o.sales)},
        {"focus_multiplier", o.focus_multiplier},
        {"synergy_multiplier", o.synergy_multiplier},
        {"streaks", per_product_json(o.streaks)},
        {"streak_multipliers", per_product_json(o.streak_multipliers)},
        {"quality_scores", std::move(quality)},
        {"noise", per_product_json(o.noise)},
        {"loyalty_before", per_product_json(o.loyalty_before)},
        {"loyalty_after", per_product_json(o.loyalty_after)},
        {"budget_debited", o.budget_debited},
        {"remaining_budget", o.remaining_budget},
    };
}

json market_report_to_json(const MarketReport& m)
{
    json teams = json::array();
    for (const auto& t : m.teams)
        teams.push_back({{"team_id", t.team_id}, {"sales", per_product_json(t.sales)}});
    json prefs = json::array();
    for (const auto& s : m.consumer_preferences)
        prefs.push_back({{"segment_id", s.id}, {"name", s.name}, {"preference", per_product_json(s.preference)}});
    return {{"week", m.week}, {"teams", std::move(teams)}, {"consumer_preferences", std::move(prefs)}};
}

json report_to_json(const TurnReport& r, const SimulationConfig& config)
{
    json doc = {
        {"team_id", r.team_id},
        {"week", r.week},
        {"test", r.test},
        {"outcome", outcome_to_json(r.outcome, config)},
        {"insights",
         {
             {"current", metrics_to_json(r.insights.current)},
             {"turn_delta", metrics_to_json(r.insights.turn_delta)},
             {"since_genesis", metrics_to_json(r.insights.since_genesis)},
         }},
        {"feedback", r.feedback},
    };
    if (r.market_report)
        doc["market_report"] = market_report_to_json(*r.market_report);
    return doc;
}

}  // namespace marksim::engine
