// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/serialize.hpp>
#include <marksim/server/config_io.hpp>

#include <set>

namespace marksim::server
{
using engine::kProductCount;
using engine::product_id;
using nlohmann::json;

namespace
{
json matrix_row(const engine::PerProduct<double>& row)
{
    return engine::per_product_json(row);
}

class ConfigReader
{
public:
    explicit ConfigReader(std::vector<Violation>& out) : out_(out) {}

    void fail(std::string field, std::string message)
    {
        out_.push_back({"INVALID_CONFIG", std::move(field), std::move(message)});
    }

    template <typename T>
    void number(const json& obj, const std::string& key, const std::string& field, T& dst)
    {
        const auto it = obj.find(key);
        if (it == obj.end())
            return;
        if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>)
        {
            if (!it->is_number_integer())
                return fail(field, "must be an integer");
            if constexpr (std::is_unsigned_v<T>)
            {
                if (!it->is_number_unsigned())
                    return fail(field, "must be non-negative");
            }
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (!it->is_boolean())
                return fail(field, "must be a boolean");
        }
        else if (!it->is_number())
        {
            return fail(field, "must be a number");
        }
        dst = it->get<T>();
    }

    std::string required_string(const json& obj, const char* key, const std::string& field)
    {
        const auto it = obj.find(key);
        if (it == obj.end() || !it->is_string())
        {
            fail(field + "/" + key, "must be a string");
            return {};
        }
        return it->get<std::string>();
    }

    /// Reads one id-keyed matrix of per-product values in [0,1].
    void matrix(const json& doc, const std::string& key, const std::vector<std::string>& ids,
                std::vector<engine::PerProduct<double>>& rows)
    {
        const auto it = doc.find(key);
        if (it == doc.end() || !it->is_object())
            return fail(key, "matrix must be an object keyed by id");
        rows.assign(ids.size(), engine::PerProduct<double>{});
        std::set<std::string> known(ids.begin(), ids.end());
        for (const auto& [row_id, _] : it->items())
            if (!known.contains(row_id))
                fail(key + "/" + row_id, "row for unknown id '" + row_id + "'");
        for (std::size_t i = 0; i < ids.size(); ++i)
        {
            const auto row = it->find(ids[i]);
            if (row == it->end() || !row->is_object())
            {
                fail(key + "/" + ids[i], "missing row for '" + ids[i] + "'");
                continue;
            }
            for (std::size_t p = 0; p < kProductCount; ++p)
            {
                const std::string pid(product_id(p));
                const auto cell = row->find(pid);
                if (cell == row->end() || !cell->is_number())
                    fail(key + "/" + ids[i] + "/" + pid, "missing value for product '" + pid + "'");
                else
                    rows[i][p] = cell->get<double>();
            }
            if (row->size() != kProductCount)
                fail(key + "/" + ids[i], "row must have exactly one value per product");
        }
    }

private:
    std::vector<Violation>& out_;
};

template <typename Item>
std::vector<std::string> ids_of(const std::vector<Item>& items)
{
    std::vector<std::string> ids;
    for (const auto& i : items)
        ids.push_back(i.id);
    return ids;
}

}  // namespace

json config_to_json(const SimulationConfig& c)
{
    json products = json::array();
    for (const auto& p : c.products)
        products.push_back({{"tier", std::string(to_string(p.tier))}, {"name", p.name}, {"base_demand", p.base_demand}});

    json channels = json::array();
    for (const auto& ch : c.channels)
    {
        channels.push_back({
            {"id", ch.id},
            {"name", ch.name},
            {"kind", std::string(to_string(ch.kind))},
            {"threshold", ch.threshold},
            {"base_efficiency", ch.base_efficiency},
        });
    }

    json keywords = json::array();
    json affinity = json::object();
    for (const auto& k : c.keywords)
    {
        keywords.push_back({{"id", k.id}, {"name", k.name}});
        affinity[k.id] = matrix_row(k.affinity);
    }

    json segments = json::array();
    json preference = json::object();
    for (const auto& s : c.segments)
    {
        segments.push_back({{"id", s.id}, {"name", s.name}});
        preference[s.id] = matrix_row(s.preference);
    }

    const auto& k = c.constants;
    return {
        {"products", std::move(products)},
        {"channels", std::move(channels)},
        {"keywords", std::move(keywords)},
        {"keyword_affinity", std::move(affinity)},
        {"segments", std::move(segments)},
        {"segment_preference", std::move(preference)},
        {"constants",
         {
             {"alpha_focus", k.alpha_focus},
             {"beta_synergy", k.beta_synergy},
             {"gamma_demand", k.gamma_demand},
             {"e_ref", k.e_ref},
             {"lambda_loyalty", k.lambda_loyalty},
             {"noise_low", k.noise_low},
             {"noise_high", k.noise_high},
             {"market_report_price", k.market_report_price},
             {"promoted_share_min", k.promoted_share_min},
         }},
        {"gas",
         {
             {"gas_price", c.gas.gas_price},
             {"gas_limit", c.gas.gas_limit},
             {"base_tx_gas", c.gas.base_tx_gas},
             {"gas_per_zero_byte", c.gas.gas_per_zero_byte},
             {"gas_per_nonzero_byte", c.gas.gas_per_nonzero_byte},
         }},
        {"global_metrics", engine::metrics_to_json(c.global_metrics)},
        {"total_budget_per_team", c.total_budget_per_team},
        {"n_weeks", c.n_weeks},
        {"test_round", c.test_round},
        {"turn_label", std::string(to_string(c.turn_label))},
        {"deterministic", c.deterministic},
        {"seed", c.seed},
        {"ack_timeout_ms", c.ack_timeout_ms},
    };
}

SimulationConfig config_from_json(const json& doc)
{
    if (!doc.is_object())
        throw Error("INVALID_CONFIG", "configuration must be a JSON object");

    std::vector<Violation> out;
    ConfigReader r(out);
    auto c = default_config();

    if (const auto it = doc.find("products"); it != doc.end())
    {
        if (!it->is_array() || it->size() != kProductCount)
        {
            r.fail("products", "exactly 3 products are required");
        }
        else
        {
            for (std::size_t p = 0; p < kProductCount; ++p)
            {
                const auto& item = (*it)[p];
                const auto field = "products/" + std::to_string(p);
                if (!item.is_object())
                {
                    r.fail(field, "product must be an object");
                    continue;
                }
                const auto tier = engine::tier_from_string(r.required_string(item, "tier", field));
                if (!tier)
                    r.fail(field + "/tier", "tier must be low_end, mid_end or high_end");
                else
                    c.products[p].tier = *tier;
                c.products[p].name = r.required_string(item, "name", field);
                r.number(item, "base_demand", field + "/base_demand", c.products[p].base_demand);
                if (!item.contains("base_demand"))
                    r.fail(field + "/base_demand", "missing base demand");
            }
        }
    }

    if (const auto it = doc.find("channels"); it != doc.end())
    {
        c.channels.clear();
        if (!it->is_array())
            r.fail("channels", "must be an array");
        else
            for (std::size_t i = 0; i < it->size(); ++i)
            {
                const auto& item = (*it)[i];
                const auto field = "channels/" + std::to_string(i);
                if (!item.is_object())
                {
                    r.fail(field, "channel must be an object");
                    continue;
                }
                engine::Channel ch;
                ch.id = r.required_string(item, "id", field);
                ch.name = r.required_string(item, "name", field);
                if (const auto kind = engine::channel_kind_from_string(r.required_string(item, "kind", field)))
                    ch.kind = *kind;
                else
                    r.fail(field + "/kind", "unknown channel kind");
                r.number(item, "threshold", field + "/threshold", ch.threshold);
                r.number(item, "base_efficiency", field + "/base_efficiency", ch.base_efficiency);
                c.channels.push_back(std::move(ch));
            }
    }

    auto read_named = [&](const char* key, auto& items) {
        const auto it = doc.find(key);
        if (it == doc.end())
            return false;
        items.clear();
        if (!it->is_array())
        {
            r.fail(key, "must be an array");
            return true;
        }
        for (std::size_t i = 0; i < it->size(); ++i)
        {
            const auto& item = (*it)[i];
            const auto field = std::string(key) + "/" + std::to_string(i);
            if (!item.is_object())
            {
                r.fail(field, "entry must be an object");
                continue;
            }
            auto& added = items.emplace_back();
            added.id = r.required_string(item, "id", field);
            added.name = r.required_string(item, "name", field);
        }
        return true;
    };

    const bool keywords_given = read_named("keywords", c.keywords);
    if (keywords_given || doc.contains("keyword_affinity"))
    {
        std::vector<engine::PerProduct<double>> rows;
        r.matrix(doc, "keyword_affinity", ids_of(c.keywords), rows);
        for (std::size_t i = 0; i < rows.size() && i < c.keywords.size(); ++i)
            c.keywords[i].affinity = rows[i];
    }

    const bool segments_given = read_named("segments", c.segments);
    if (segments_given || doc.contains("segment_preference"))
    {
        std::vector<engine::PerProduct<double>> rows;
        r.matrix(doc, "segment_preference", ids_of(c.segments), rows);
        for (std::size_t i = 0; i < rows.size() && i < c.segments.size(); ++i)
            c.segments[i].preference = rows[i];
    }

    if (const auto it = doc.find("constants"); it != doc.end())
    {
        if (!it->is_object())
            r.fail("constants", "must be an object");
        else
        {
            auto& k = c.constants;
            r.number(*it, "alpha_focus", "constants/alpha_focus", k.alpha_focus);
            r.number(*it, "beta_synergy", "constants/beta_synergy", k.beta_synergy);
            r.number(*it, "gamma_demand", "constants/gamma_demand", k.gamma_demand);
            r.number(*it, "e_ref", "constants/e_ref", k.e_ref);
            r.number(*it, "lambda_loyalty", "constants/lambda_loyalty", k.lambda_loyalty);
            r.number(*it, "noise_low", "constants/noise_low", k.noise_low);
            r.number(*it, "noise_high", "constants/noise_high", k.noise_high);
            r.number(*it, "market_report_price", "constants/market_report_price", k.market_report_price);
            r.number(*it, "promoted_share_min", "constants/promoted_share_min", k.promoted_share_min);
        }
    }

    if (const auto it = doc.find("gas"); it != doc.end())
    {
        if (!it->is_object())
            r.fail("gas", "must be an object");
        else
        {
            r.number(*it, "gas_price", "gas/gas_price", c.gas.gas_price);
            r.number(*it, "gas_limit", "gas/gas_limit", c.gas.gas_limit);
            r.number(*it, "base_tx_gas", "gas/base_tx_gas", c.gas.base_tx_gas);
            r.number(*it, "gas_per_zero_byte", "gas/gas_per_zero_byte", c.gas.gas_per_zero_byte);
            r.number(*it, "gas_per_nonzero_byte", "gas/gas_per_nonzero_byte", c.gas.gas_per_nonzero_byte);
        }
    }

    if (const auto it = doc.find("global_metrics"); it != doc.end())
    {
        if (!it->is_object())
            r.fail("global_metrics", "must be an object");
        else
        {
            auto& m = c.global_metrics;
            r.number(*it, "likes", "global_metrics/likes", m.likes);
            r.number(*it, "post_engagement", "global_metrics/post_engagement", m.post_engagement);
            r.number(*it, "page_views", "global_metrics/page_views", m.page_views);
            r.number(*it, "avg_post_reach", "global_metrics/avg_post_reach", m.avg_post_reach);
        }
    }

    r.number(doc, "total_budget_per_team", "total_budget_per_team", c.total_budget_per_team);
    r.number(doc, "n_weeks", "n_weeks", c.n_weeks);
    r.number(doc, "test_round", "test_round", c.test_round);
    r.number(doc, "deterministic", "deterministic", c.deterministic);
    r.number(doc, "seed", "seed", c.seed);
    r.number(doc, "ack_timeout_ms", "ack_timeout_ms", c.ack_timeout_ms);
    if (const auto it = doc.find("turn_label"); it != doc.end())
    {
        const auto label = it->is_string() ? engine::turn_label_from_string(it->get<std::string>()) : std::nullopt;
        if (!label)
            r.fail("turn_label", "must be 'daily' or 'weekly'");
        else
            c.turn_label = *label;
    }

    if (out.empty())
        out = check_config(c);
    if (!out.empty())
        throw Error("INVALID_CONFIG", "configuration rejected", std::move(out));
    return c;
}

}  // namespace marksim::server
