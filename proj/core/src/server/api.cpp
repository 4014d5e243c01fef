// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/serialize.hpp>
#include <marksim/server/api.hpp>
#include <marksim/server/config_io.hpp>

#include <charconv>
#include <unordered_map>

namespace marksim::server
{
using nlohmann::json;

namespace
{
ApiResponse ok(const json& doc, int status = 200)
{
    return ApiResponse{status, "application/json", doc.dump()};
}

json parse_body(const std::string& body)
{
    if (body.empty())
        return json::object();
    auto doc = json::parse(body, nullptr, false);
    if (doc.is_discarded())
        throw Error("INVALID_JSON", "request body is not valid JSON");
    return doc;
}

template <typename T>
T parse_number(std::string_view text, const char* what)
{
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw Error("INVALID_QUERY", std::string(what) + " must be a non-negative integer");
    return value;
}

std::vector<std::string_view> split_path(std::string_view path)
{
    std::vector<std::string_view> parts;
    while (!path.empty())
    {
        if (path.front() == '/')
        {
            path.remove_prefix(1);
            continue;
        }
        const auto end = path.find('/');
        parts.push_back(path.substr(0, end));
        path.remove_prefix(end == std::string_view::npos ? path.size() : end);
    }
    return parts;
}

std::string bearer(const std::string& header)
{
    constexpr std::string_view prefix = "Bearer ";
    if (header.starts_with(prefix))
        return header.substr(prefix.size());
    return {};
}

json finality_json(const ledger::FinalityStatus& s)
{
    return {{"state", std::string(to_string(s.state))}, {"acks", s.ack_count}, {"required", s.required}};
}

}  // namespace

int status_for(const std::string& code) noexcept
{
    static const std::unordered_map<std::string, int> table{
        {"UNAUTHORIZED", 401},
        {"FORBIDDEN", 403},
        {"NOT_FOUND", 404},
        {"NO_SESSION", 404},
        {"UNKNOWN_TEAM", 404},
        {"UNKNOWN_BLOCK", 404},
        {"METHOD_NOT_ALLOWED", 405},
        {"SESSION_EXISTS", 409},
        {"SESSION_STARTED", 409},
        {"NAME_TAKEN", 409},
        {"ACCOUNTS_EXHAUSTED", 409},
        {"WRONG_WEEK", 409},
        {"ALREADY_SUBMITTED", 409},
        {"ALREADY_FINALIZING", 409},
        {"SIMULATION_FINISHED", 409},
        {"WEEK_NOT_FINALIZED", 409},
        {"REGISTRATION_OPEN", 409},
        {"EMPTY_SESSION", 409},
        {"INSUFFICIENT_BUDGET", 409},
        {"IO_ERROR", 500},
        {"CHAIN_CORRUPT", 500},
        {"LOG_CORRUPT", 500},
        {"INTERNAL", 500},
    };
    const auto it = table.find(code);
    return it == table.end() ? 400 : it->second;
}

json error_json(const Error& error)
{
    json violations = json::array();
    for (const auto& v : error.violations())
        violations.push_back({{"code", v.code}, {"field", v.field}, {"message", v.message}});
    std::string message = error.what();
    if (const auto prefix = error.code() + ": "; message.starts_with(prefix))
        message.erase(0, prefix.size());
    return {{"code", error.code()}, {"message", message}, {"violations", std::move(violations)}};
}

Api::Api(std::string admin_token, SessionOptions options)
    : admin_token_(std::move(admin_token)), options_(std::move(options))
{
}

void Api::attach(std::unique_ptr<Session> session)
{
    std::lock_guard lock(mutex_);
    session_ = std::move(session);
}

std::shared_ptr<Session> Api::session() const
{
    std::lock_guard lock(mutex_);
    return session_;
}

Api::Caller Api::authenticate(const ApiRequest& request, const std::shared_ptr<Session>& session) const
{
    const auto token = bearer(request.authorization);
    if (token.empty())
        throw Error("UNAUTHORIZED", "missing bearer token");
    if (!admin_token_.empty() && token == admin_token_)
        return {true, std::nullopt};
    if (session)
        if (const auto team = session->team_for_token(token))
            return {false, team};
    throw Error("UNAUTHORIZED", "unknown token");
}

ApiResponse Api::handle(const ApiRequest& request)
{
    try
    {
        return dispatch(request);
    }
    catch (const Error& e)
    {
        return ok(error_json(e), status_for(e.code()));
    }
    catch (const json::exception& e)
    {
        return ok(error_json(Error("INVALID_JSON", e.what())), 400);
    }
    catch (const std::exception& e)
    {
        return ok(error_json(Error("INTERNAL", e.what())), 500);
    }
}

ApiResponse Api::dispatch(const ApiRequest& req)
{
    const auto parts = split_path(req.path);
    if (parts.size() < 2 || parts[0] != "api")
        throw Error("NOT_FOUND", "no route " + req.path);
    const bool get = req.method == "GET";
    const bool post = req.method == "POST";
    auto session = this->session();

    auto require_session = [&]() -> Session& {
        if (!session)
            throw Error("NO_SESSION", "no simulation has been created");
        return *session;
    };
    auto require_admin = [](const Caller& c) {
        if (!c.admin)
            throw Error("FORBIDDEN", "administrator token required");
    };
    // Team callers act as themselves; the administrator names a team.
    auto acting_team = [&](const Caller& c, std::optional<int> named) -> int {
        if (c.team)
        {
            if (named && *named != *c.team)
                throw Error("FORBIDDEN", "a team may only act for itself");
            return *c.team;
        }
        if (!named)
            throw Error("INVALID_QUERY", "administrator requests must name a team");
        return *named;
    };
    auto named_team = [&]() -> std::optional<int> {
        const auto it = req.query.find("team");
        if (it == req.query.end())
            return std::nullopt;
        return parse_number<int>(it->second, "team");
    };

    const auto route = parts[1];
    if (route == "simulation" && parts.size() == 2)
    {
        const auto caller = authenticate(req, session);
        if (get)
        {
            auto& s = require_session();
            const auto snapshot = s.standings(std::nullopt);
            return ok({
                {"phase", snapshot.at("phase")},
                {"week", s.current_week()},
                {"n_weeks", s.config().n_weeks},
                {"last_week", s.config().last_week()},
                {"test_round", s.config().test_round},
                {"team_count", snapshot.at("team_count")},
                {"height", s.chain().size()},
            });
        }
        if (!post)
            throw Error("METHOD_NOT_ALLOWED", req.method + " " + req.path);
        require_admin(caller);
        std::lock_guard lock(mutex_);
        if (session_)
            throw Error("SESSION_EXISTS", "a simulation is already running");
        const auto config = config_from_json(parse_body(req.body));
        session_ = Session::create(config, options_);
        const auto chain = session_->chain();
        return ok({{"phase", std::string(to_string(session_->phase()))},
                   {"genesis_hash", ledger::to_hex(chain.front().block_hash)}},
                  201);
    }

    if (route == "teams" && parts.size() == 2 && post)
    {
        const auto body = parse_body(req.body);
        const auto name = body.value("name", std::string{});
        const auto r = require_session().register_team(name);
        return ok(
            {
                {"team_id", r.team.team_id},
                {"name", r.team.name},
                {"token", r.team.token},
                {"address", ledger::to_string(r.team.address)},
                {"secret_key", ledger::to_hex(r.secret)},
                {"budget", r.budget},
            },
            201);
    }

    if (route == "plans" && parts.size() == 2 && post)
    {
        const auto caller = authenticate(req, session);
        auto body = parse_body(req.body);
        std::optional<int> named;
        if (body.is_object() && body.contains("team_id") && body["team_id"].is_number_integer())
            named = body["team_id"].get<int>();
        const auto team_id = acting_team(caller, named);
        if (body.is_object())
            body["team_id"] = team_id;
        const auto plan = engine::plan_from_json(body);
        const auto r = require_session().submit_plan(plan);
        return ok({{"team_id", r.team_id}, {"week", r.week}, {"budget_after", r.budget_after}}, 201);
    }

    if (route == "turns" && parts.size() == 3 && parts[2] == "finalize" && post)
    {
        require_admin(authenticate(req, session));
        const auto body = parse_body(req.body);
        std::optional<int> week;
        std::optional<std::uint64_t> gas_price;
        if (body.contains("week"))
            week = body.at("week").get<int>();
        if (body.contains("gas_price"))
        {
            if (!body.at("gas_price").is_number_unsigned())
                throw Error("INVALID_GAS_PRICE", "gas price must be a positive integer");
            gas_price = body.at("gas_price").get<std::uint64_t>();
        }
        const auto r = require_session().finalize_turn(week, gas_price);
        return ok({
            {"week", r.week},
            {"test", r.test},
            {"height", r.height},
            {"block_hash", ledger::to_hex(r.block_hash)},
            {"tx_count", r.tx_count},
            {"phase", std::string(to_string(r.phase))},
        });
    }

    if (route == "reports" && parts.size() == 4 && get)
    {
        const auto caller = authenticate(req, session);
        const auto team_id = parse_number<int>(parts[2], "team");
        const auto week = parse_number<int>(parts[3], "week");
        acting_team(caller, team_id);
        return ok(require_session().report(team_id, week));
    }

    if (route == "market-report" && parts.size() == 3 && post)
    {
        const auto caller = authenticate(req, session);
        const auto week = parse_number<int>(parts[2], "week");
        const auto team_id = acting_team(caller, named_team());
        return ok(require_session().purchase_market_report(team_id, week));
    }

    if (route == "ledger" && parts.size() == 3 && parts[2] == "blocks" && get)
    {
        authenticate(req, session);
        auto& s = require_session();
        const auto height = s.chain().size();
        std::uint64_t from = 0;
        std::uint64_t to = height == 0 ? 0 : height - 1;
        if (const auto it = req.query.find("from"); it != req.query.end())
            from = parse_number<std::uint64_t>(it->second, "from");
        if (const auto it = req.query.find("to"); it != req.query.end())
            to = parse_number<std::uint64_t>(it->second, "to");
        if (from > to)
            throw Error("INVALID_QUERY", "from must not exceed to");
        return ok(s.blocks(from, to));
    }

    if (route == "ledger" && parts.size() == 3 && parts[2] == "acks" && post)
    {
        const auto caller = authenticate(req, session);
        const auto body = parse_body(req.body);
        std::optional<int> named;
        if (body.contains("team_id"))
            named = body.at("team_id").get<int>();
        const auto team_id = acting_team(caller, named);
        const auto hash = ledger::fixed_from_hex<32>(body.value("block_hash", std::string{}));
        const auto signature = ledger::fixed_from_hex<64>(body.value("signature", std::string{}));
        if (!hash || !signature)
            throw Error("INVALID_ACK", "block_hash and signature must be lowercase hex");
        const auto status = require_session().acknowledge(*hash, team_id, *signature);
        return ok(finality_json(status));
    }

    if (route == "metrics.csv" && parts.size() == 2 && get)
    {
        authenticate(req, session);
        return ApiResponse{200, "text/csv", require_session().metrics_csv()};
    }

    if (route == "standings" && parts.size() == 2 && get)
    {
        const auto caller = authenticate(req, session);
        return ok(require_session().standings(caller.team));
    }

    throw Error("NOT_FOUND", "no route " + req.method + " " + req.path);
}

}  // namespace marksim::server
