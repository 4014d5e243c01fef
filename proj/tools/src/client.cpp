// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/tools/client.hpp>

#include <httplib.h>

namespace marksim::tools
{
using nlohmann::json;

struct HttpTransport::Impl
{
    explicit Impl(const std::string& url) : client(url)
    {
        client.set_connection_timeout(5);
        client.set_read_timeout(60);
    }
    httplib::Client client;
    std::string url;
};

HttpTransport::HttpTransport(const std::string& base_url)
{
    try
    {
        impl_ = std::make_unique<Impl>(base_url);
    }
    catch (const std::exception& e)
    {
        throw Error("INVALID_URL", "cannot use server URL '" + base_url + "': " + e.what());
    }
    impl_->url = base_url;
    if (!impl_->client.is_valid())
        throw Error("INVALID_URL", "cannot use server URL '" + base_url + "'");
}

HttpTransport::~HttpTransport() = default;

server::ApiResponse HttpTransport::send(const server::ApiRequest& request)
{
    httplib::Headers headers;
    if (!request.authorization.empty())
        headers.emplace("Authorization", request.authorization);
    httplib::Params params(request.query.begin(), request.query.end());
    const auto path = params.empty() ? request.path : httplib::append_query_params(request.path, params);

    httplib::Result result;
    if (request.method == "GET")
        result = impl_->client.Get(path, headers);
    else if (request.method == "POST")
        result = impl_->client.Post(path, headers, request.body, "application/json");
    else
        throw Error("INVALID_REQUEST", "unsupported method " + request.method);

    if (!result)
        throw Error("UNREACHABLE", "server " + impl_->url + " unreachable: " + httplib::to_string(result.error()));
    const auto type = result->get_header_value("Content-Type");
    return server::ApiResponse{result->status, type.empty() ? "application/json" : type, result->body};
}

SimClient::SimClient(Transport& transport, std::string admin_token)
    : transport_(transport), admin_token_(std::move(admin_token))
{
}

server::ApiResponse SimClient::call(const std::string& method, const std::string& path, const std::string& token,
                                    const json* body, std::map<std::string, std::string> query)
{
    server::ApiRequest req;
    req.method = method;
    req.path = path;
    req.query = std::move(query);
    if (!token.empty())
        req.authorization = "Bearer " + token;
    if (body != nullptr)
        req.body = body->dump();
    auto res = transport_.send(req);
    if (res.status >= 400)
    {
        const auto doc = json::parse(res.body, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("code"))
            throw Error("HTTP_" + std::to_string(res.status), res.body);
        std::vector<Violation> violations;
        for (const auto& v : doc.value("violations", json::array()))
            violations.push_back({v.value("code", ""), v.value("field", ""), v.value("message", "")});
        throw Error(doc.at("code").get<std::string>(), doc.value("message", ""), std::move(violations));
    }
    return res;
}

json SimClient::call_json(const std::string& method, const std::string& path, const std::string& token,
                          const json* body, std::map<std::string, std::string> query)
{
    const auto res = call(method, path, token, body, std::move(query));
    auto doc = json::parse(res.body, nullptr, false);
    if (doc.is_discarded())
        throw Error("BAD_RESPONSE", "server answered with invalid JSON");
    return doc;
}

json SimClient::create_simulation(const json& config)
{
    return call_json("POST", "/api/simulation", admin_token_, &config);
}

json SimClient::status(const std::string& token)
{
    return call_json("GET", "/api/simulation", token);
}

json SimClient::register_team(const std::string& name)
{
    const json body{{"name", name}};
    return call_json("POST", "/api/teams", {}, &body);
}

json SimClient::submit_plan(json plan, const std::string& token)
{
    return call_json("POST", "/api/plans", token, &plan);
}

json SimClient::finalize(std::optional<int> week, std::optional<std::uint64_t> gas_price)
{
    json body = json::object();
    if (week)
        body["week"] = *week;
    if (gas_price)
        body["gas_price"] = *gas_price;
    return call_json("POST", "/api/turns/finalize", admin_token_, &body);
}

json SimClient::report(int team_id, int week, const std::string& token)
{
    return call_json("GET", "/api/reports/" + std::to_string(team_id) + "/" + std::to_string(week), token);
}

json SimClient::purchase_market_report(int week, const std::string& token)
{
    return call_json("POST", "/api/market-report/" + std::to_string(week), token);
}

json SimClient::blocks(std::optional<std::uint64_t> from, std::optional<std::uint64_t> to, const std::string& token)
{
    std::map<std::string, std::string> query;
    if (from)
        query["from"] = std::to_string(*from);
    if (to)
        query["to"] = std::to_string(*to);
    return call_json("GET", "/api/ledger/blocks", token, nullptr, std::move(query));
}

json SimClient::acknowledge(const std::string& block_hash, int team_id, const std::string& signature,
                            const std::string& token)
{
    const json body{{"block_hash", block_hash}, {"team_id", team_id}, {"signature", signature}};
    return call_json("POST", "/api/ledger/acks", token, &body);
}

std::string SimClient::metrics_csv(const std::string& token)
{
    return call("GET", "/api/metrics.csv", token).body;
}

json SimClient::standings(const std::string& token)
{
    return call_json("GET", "/api/standings", token);
}

}  // namespace marksim::tools
