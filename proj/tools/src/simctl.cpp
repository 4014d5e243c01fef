// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/serialize.hpp>
#include <marksim/ledger/chain_file.hpp>
#include <marksim/ledger/verify.hpp>
#include <marksim/server/config_io.hpp>
#include <marksim/server/http_server.hpp>
#include <marksim/tools/bots.hpp>
#include <marksim/tools/client.hpp>
#include <marksim/tools/simctl.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace marksim::tools
{
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{
std::atomic<bool> g_stop{false};

extern "C" void on_signal(int)
{
    g_stop.store(true);
}

std::string env_or_empty(const char* name)
{
    const char* value = std::getenv(name);
    return value == nullptr ? std::string{} : std::string(value);
}

std::string admin_token()
{
    return env_or_empty("MARKSIM_ADMIN_TOKEN");
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("IO_ERROR", "cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << data) || !out.flush())
        throw Error("IO_ERROR", "cannot write " + path.string());
}

json read_json(const fs::path& path)
{
    auto doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded())
        throw Error("INVALID_JSON", path.string() + " is not valid JSON");
    return doc;
}

SimulationConfig load_config(const std::string& path)
{
    return path.empty() ? default_config() : server::config_from_json(read_json(path));
}

fs::path events_path(const std::string& events, const std::string& chain)
{
    return events.empty() ? fs::path(chain + ".events") : fs::path(events);
}

int exit_code_for(const std::string& code)
{
    if (code == "IO_ERROR" || code == "UNREACHABLE" || code == "INVALID_URL" || code.starts_with("HTTP_5"))
        return kExitIo;
    if (code == "CHAIN_CORRUPT" || code == "LOG_CORRUPT")
        return kExitVerify;
    return kExitUser;
}

void print_error(std::ostream& err, const Error& e)
{
    err << "error: " << e.what() << "\n";
    for (const auto& v : e.violations())
        err << "  " << v.code << " at " << (v.field.empty() ? "-" : v.field) << ": " << v.message << "\n";
}

struct Options
{
    std::string url;
    std::string token;
    std::string config;
    std::string chain;
    std::string events;
    std::string file;
    std::string out;
    std::string name;
    std::string strategy = "random_valid";
    std::string host = "127.0.0.1";
    std::string port_file;
    int port = 8080;
    int teams = 10;
    int weeks = 12;
    std::uint64_t seed = 0;
    std::optional<int> week;
    std::optional<std::uint64_t> gas_price;
};

int cmd_init(const Options& o, std::ostream& out, CLI::App& sub)
{
    auto config = default_config();
    if (sub.count("--seed") > 0)
        config.seed = o.seed;
    if (sub.count("--weeks") > 0)
        config.n_weeks = o.weeks;
    if (auto v = check_config(config); !v.empty())
        throw Error("INVALID_CONFIG", "configuration rejected", std::move(v));
    write_file(o.out, server::config_to_json(config).dump(2) + "\n");
    out << "wrote " << o.out << "\n";
    return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out)
{
    const auto token = admin_token();
    if (token.empty())
        throw Error("MISSING_ADMIN_TOKEN", "set MARKSIM_ADMIN_TOKEN before serving");

    server::SessionOptions session_options;
    session_options.chain_file = o.chain;
    session_options.event_log = events_path(o.events, o.chain);
    server::Api api(token, session_options);

    if (auto recovered = server::Session::recover(session_options))
    {
        out << "recovered session at week " << recovered->current_week() << " with "
            << recovered->event_count() << " events\n";
        api.attach(std::move(recovered));
    }
    else if (!o.config.empty())
    {
        api.attach(server::Session::create(load_config(o.config), session_options));
        out << "created session from " << o.config << "\n";
    }
    else
    {
        out << "waiting for POST /api/simulation\n";
    }

    server::HttpServer http(api);
    const int port = http.start(o.host, o.port);
    out << "listening on http://" << o.host << ":" << port << "\n" << std::flush;
    if (!o.port_file.empty())
    {
        const auto tmp = o.port_file + ".tmp";
        write_file(tmp, std::to_string(port) + "\n");
        fs::rename(tmp, o.port_file);
    }

    g_stop.store(false);
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_stop.load())
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    http.stop();
    out << "stopped\n";
    return kExitOk;
}

int cmd_add_team(const Options& o, std::ostream& out)
{
    HttpTransport transport(o.url);
    SimClient client(transport, admin_token());
    out << client.register_team(o.name).dump(2) << "\n";
    return kExitOk;
}

int cmd_submit_plan(const Options& o, std::ostream& out)
{
    if (o.token.empty())
        throw Error("MISSING_TOKEN", "--token or MARKSIM_TEAM_TOKEN is required");
    HttpTransport transport(o.url);
    SimClient client(transport, admin_token());
    auto plan = read_json(o.file);
    if (!plan.is_object())
        throw Error("INVALID_PLAN_DOCUMENT", "plan must be a JSON object");
    if (o.week)
        plan["week"] = *o.week;
    else if (!plan.contains("week"))
        plan["week"] = client.status(o.token).at("week");
    plan.erase("team_id");
    const auto r = client.submit_plan(plan, o.token);
    out << "accepted team " << r.at("team_id").get<int>() << " week " << r.at("week").get<int>()
        << ", remaining budget " << r.at("budget_after").get<std::int64_t>() << " EUR\n";
    return kExitOk;
}

int cmd_finalize(const Options& o, std::ostream& out)
{
    HttpTransport transport(o.url);
    SimClient client(transport, admin_token());
    out << client.finalize(o.week, o.gas_price).dump(2) << "\n";
    return kExitOk;
}

int cmd_bots(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto strategy = strategy_from_string(o.strategy);
    if (!strategy)
        throw Error("INVALID_ARGUMENT", "unknown strategy '" + o.strategy + "'");
    if (o.teams < 1)
        throw Error("INVALID_ARGUMENT", "--teams must be at least 1");

    auto config = load_config(o.config);
    config.n_weeks = o.weeks;
    config.seed = o.seed;
    if (auto v = check_config(config); !v.empty())
        throw Error("INVALID_CONFIG", "configuration rejected", std::move(v));
    const BotOptions options{o.teams, o.seed, *strategy, true};

    BotSummary summary;
    if (o.url.empty())
    {
        const std::string token = "local-admin";
        server::SessionOptions session_options;
        if (!o.chain.empty())
        {
            session_options.chain_file = o.chain;
            session_options.event_log = events_path(o.events, o.chain);
        }
        server::Api api(token, session_options);
        LocalTransport transport(api);
        SimClient client(transport, token);
        client.create_simulation(server::config_to_json(config));
        summary = run_bots(client, config, options);
    }
    else
    {
        HttpTransport transport(o.url);
        SimClient client(transport, admin_token());
        client.create_simulation(server::config_to_json(config));
        summary = run_bots(client, config, options);
    }

    out << format_summary(summary);
    if (!summary.finality_ms.empty())
    {
        double worst = 0.0;
        for (const auto ms : summary.finality_ms)
            worst = std::max(worst, ms);
        err << "finality: " << summary.finality_ms.size() << " blocks, worst " << worst << " ms\n";
    }
    if (!o.out.empty())
    {
        const json doc{
            {"standings", summary.standings.at("teams")},
            {"block_hashes", summary.block_hashes},
            {"turns", summary.turns},
        };
        write_file(o.out, doc.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify_ledger(const Options& o, std::ostream& out)
{
    if (!fs::exists(o.chain))
        throw Error("IO_ERROR", "no chain file at " + o.chain);
    const auto config = load_config(o.config);
    const auto lines = ledger::ChainFile(o.chain).read_lines();
    if (const auto fault = ledger::verify_chain_lines(lines, config.gas))
    {
        out << "height " << fault->height << ": " << to_string(fault->reason);
        if (!fault->detail.empty())
            out << " (" << fault->detail << ")";
        out << "\n";
        return kExitVerify;
    }
    out << "ok\n";
    return kExitOk;
}

int cmd_export_metrics(const Options& o, std::ostream& out)
{
    std::string csv;
    if (!o.url.empty())
    {
        HttpTransport transport(o.url);
        SimClient client(transport, admin_token());
        csv = client.metrics_csv(o.token.empty() ? admin_token() : o.token);
    }
    else
    {
        if (o.chain.empty() && o.events.empty())
            throw Error("INVALID_ARGUMENT", "--url or --chain is required");
        server::SessionOptions session_options;
        session_options.event_log = events_path(o.events, o.chain);
        if (!fs::exists(*session_options.event_log))
            throw Error("IO_ERROR", "no event log at " + session_options.event_log->string());
        const auto session = server::Session::recover(session_options);
        if (!session)
            throw Error("NO_SESSION", "the event log is empty");
        csv = session->metrics_csv();
    }
    if (o.out.empty())
        out << csv;
    else
        write_file(o.out, csv);
    return kExitOk;
}

}  // namespace

int run_simctl(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    o.token = env_or_empty("MARKSIM_TEAM_TOKEN");

    CLI::App app{"marksim operator tool"};
    app.require_subcommand(1);

    auto* init = app.add_subcommand("init", "write the default configuration document");
    init->add_option("--out", o.out, "output path")->required();
    init->add_option("--seed", o.seed, "engine seed");
    init->add_option("--weeks", o.weeks, "scoring weeks")->check(CLI::Range(1, 520));

    auto* serve = app.add_subcommand("serve", "run the HTTP API");
    serve->add_option("--config", o.config, "configuration document for a new session");
    serve->add_option("--chain", o.chain, "chain file")->required();
    serve->add_option("--events", o.events, "event log (default: <chain>.events)");
    serve->add_option("--host", o.host, "bind address");
    serve->add_option("--port", o.port, "port, 0 for any")->check(CLI::Range(0, 65535));
    serve->add_option("--port-file", o.port_file, "write the bound port here");

    auto* add_team = app.add_subcommand("add-team", "register a team");
    add_team->add_option("--url", o.url, "server URL")->required();
    add_team->add_option("--name", o.name, "team name")->required();

    auto* submit = app.add_subcommand("submit-plan", "submit a weekly plan document");
    submit->add_option("--url", o.url, "server URL")->required();
    submit->add_option("--token", o.token, "team token (default: MARKSIM_TEAM_TOKEN)");
    submit->add_option("--file", o.file, "plan document")->required();
    submit->add_option("--week", o.week, "override the plan's week");

    auto* finalize = app.add_subcommand("finalize", "finalize the current turn");
    finalize->add_option("--url", o.url, "server URL")->required();
    finalize->add_option("--week", o.week, "expected week");
    finalize->add_option("--gas-price", o.gas_price, "gas price in Wei for this turn");

    auto* bots = app.add_subcommand("bots", "play a whole session with scripted teams");
    bots->add_option("--url", o.url, "server URL (default: in-process)");
    bots->add_option("--config", o.config, "configuration document");
    bots->add_option("--chain", o.chain, "chain file for the in-process session");
    bots->add_option("--events", o.events, "event log (default: <chain>.events)");
    bots->add_option("--teams", o.teams, "number of teams");
    bots->add_option("--weeks", o.weeks, "scoring weeks")->check(CLI::Range(1, 520));
    bots->add_option("--seed", o.seed, "seed for the engine and the strategies");
    bots->add_option("--strategy", o.strategy, "random_valid | focus_one_product | table1_replay");
    bots->add_option("--out", o.out, "write standings and block hashes as JSON");

    auto* verify = app.add_subcommand("verify-ledger", "verify a chain file");
    verify->add_option("--chain", o.chain, "chain file")->required();
    verify->add_option("--config", o.config, "configuration document (gas schedule)");

    auto* metrics = app.add_subcommand("export-metrics", "write the per-transaction metrics CSV");
    metrics->add_option("--url", o.url, "server URL");
    metrics->add_option("--chain", o.chain, "chain file of a stopped session");
    metrics->add_option("--events", o.events, "event log (default: <chain>.events)");
    metrics->add_option("--out", o.out, "output path (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUser;
    }

    try
    {
        if (init->parsed())
            return cmd_init(o, out, *init);
        if (serve->parsed())
            return cmd_serve(o, out);
        if (add_team->parsed())
            return cmd_add_team(o, out);
        if (submit->parsed())
            return cmd_submit_plan(o, out);
        if (finalize->parsed())
            return cmd_finalize(o, out);
        if (bots->parsed())
            return cmd_bots(o, out, err);
        if (verify->parsed())
            return cmd_verify_ledger(o, out);
        if (metrics->parsed())
            return cmd_export_metrics(o, out);
    }
    catch (const Error& e)
    {
        print_error(err, e);
        return exit_code_for(e.code());
    }
    catch (const fs::filesystem_error& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitUser;
    }
    return kExitUser;
}

}  // namespace marksim::tools
