// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/engine/engine.hpp>
#include <marksim/engine/reports.hpp>
#include <marksim/engine/serialize.hpp>
#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/metrics.hpp>
#include <marksim/server/config_io.hpp>
#include <marksim/server/session.hpp>

#include <algorithm>
#include <chrono>

namespace marksim::server
{
using ledger::Block;
using ledger::Hash;
using ledger::to_hex;
using ledger::TxKind;
using nlohmann::json;

namespace
{
std::int64_t system_clock_ms()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string hex_of(const Hash& h)
{
    return to_hex(h);
}

Hash hash_field(const json& payload, const char* key)
{
    const auto h = ledger::fixed_from_hex<32>(payload.at(key).get<std::string>());
    if (!h)
        throw Error("LOG_CORRUPT", std::string("event field '") + key + "' is not a hash");
    return *h;
}

json block_summary(const Block& b, const ledger::FinalityStatus& status, json acked_by)
{
    json txs = json::array();
    ledger::Wei fees = 0;
    std::uint64_t gas = 0;
    for (const auto& tx : b.transactions)
    {
        fees += tx.fee();
        gas += tx.gas_used;
        txs.push_back({
            {"tx_hash", to_hex(tx.tx_hash)},
            {"kind", std::string(to_string(tx.kind))},
            {"sender", ledger::to_string(tx.sender)},
            {"nonce", tx.nonce},
            {"payload_digest", to_hex(tx.payload_digest)},
            {"payload_bytes", tx.payload.size()},
            {"gas_used", tx.gas_used},
            {"gas_price", tx.gas_price},
            {"fee_wei", ledger::to_string(tx.fee())},
        });
    }
    return {
        {"height", b.height},
        {"block_hash", to_hex(b.block_hash)},
        {"prev_hash", to_hex(b.prev_hash)},
        {"tx_list_hash", to_hex(b.tx_list_hash)},
        {"timestamp", b.timestamp_ms},
        {"week", b.week},
        {"test", b.test},
        {"gas_used", gas},
        {"fees_wei", ledger::to_string(fees)},
        {"finality",
         {
             {"state", std::string(to_string(status.state))},
             {"acks", status.ack_count},
             {"required", status.required},
             {"acked_by", std::move(acked_by)},
         }},
        {"transactions", std::move(txs)},
    };
}

}  // namespace

std::string_view to_string(Phase phase) noexcept
{
    switch (phase)
    {
    case Phase::setup:
        return "setup";
    case Phase::accepting_plans:
        return "accepting_plans";
    case Phase::finalizing:
        return "finalizing";
    case Phase::finished:
        return "finished";
    }
    return "unknown";
}

struct Session::TurnCommit
{
    int week = 0;
    bool test = false;
    engine::MarketState next;
    std::map<int, json> reports;
    json market;
    std::map<int, std::int64_t> sales;
    std::set<int> purchased;
    const Block* block = nullptr;
};

Session::Session(SimulationConfig config, SessionOptions options)
    : config_(std::move(config)), options_(std::move(options)), ledger_(config_.gas)
{
    if (!options_.clock)
        options_.clock = system_clock_ms;
    if (options_.chain_file)
        chain_file_.emplace(*options_.chain_file);
    config_digest_ = ledger::canonical_digest(config_to_json(config_));
}

Session::~Session() = default;

std::unique_ptr<Session> Session::create(const SimulationConfig& config, SessionOptions options)
{
    if (auto violations = check_config(config); !violations.empty())
        throw Error("INVALID_CONFIG", "configuration rejected", std::move(violations));

    std::unique_ptr<Session> s(new Session(config, std::move(options)));
    std::lock_guard lock(s->mutex_);
    if (s->options_.event_log)
        s->log_ = EventLog(*s->options_.event_log);
    s->log_.reset({});

    const auto digest_hex = hex_of(s->config_digest_);
    std::string session_id;
    if (config.deterministic)
        session_id = digest_hex.substr(0, 16);
    else
    {
        const auto bytes = ledger::random_seed();
        session_id = to_hex(std::span(bytes).first(8));
    }
    const auto record = s->make_event(EventKind::sim_created, {
                                                                  {"config", config_to_json(config)},
                                                                  {"session_id", session_id},
                                                                  {"timestamp", s->block_timestamp()},
                                                              });
    s->apply_created(record, true);
    return s;
}

std::unique_ptr<Session> Session::recover(SessionOptions options)
{
    if (!options.event_log)
        throw Error("IO_ERROR", "recovery needs an event log path");
    auto records = EventLog::read(*options.event_log);
    if (records.empty())
        return nullptr;
    if (records.front().kind != EventKind::sim_created)
        throw Error("LOG_CORRUPT", "event 0 must create the simulation");

    auto config = config_from_json(records.front().payload.at("config"));
    std::unique_ptr<Session> s(new Session(std::move(config), std::move(options)));
    std::lock_guard lock(s->mutex_);
    s->apply_created(records.front(), false);
    for (std::size_t i = 1; i < records.size(); ++i)
        s->replay(records[i]);

    if (s->options_.event_log)
        s->log_ = EventLog(*s->options_.event_log);
    s->log_.reset(std::move(records));
    if (s->chain_file_)
        s->chain_file_->rewrite(s->ledger_.blocks());
    return s;
}

std::int64_t Session::now() const
{
    return options_.clock();
}

std::int64_t Session::block_timestamp() const
{
    return config_.deterministic ? 0 : now();
}

EventRecord Session::make_event(EventKind kind, json payload) const
{
    return EventRecord{log_.size(), kind, std::move(payload), now()};
}

void Session::commit_event(const EventRecord& record)
{
    log_.append(record);
}

void Session::check_recorded_block(const json& payload, const Block& block) const
{
    if (hash_field(payload, "block_hash") != block.block_hash)
        throw Error("LOG_CORRUPT", "replayed block " + std::to_string(block.height) +
                                       " does not match the recorded hash");
}

void Session::replay(const EventRecord& record)
{
    try
    {
        switch (record.kind)
        {
        case EventKind::sim_created:
            throw Error("LOG_CORRUPT", "duplicate creation event");
        case EventKind::team_registered:
            apply_registered(record);
            break;
        case EventKind::plan_submitted:
            apply_plan(record);
            break;
        case EventKind::turn_finalized:
            apply_finalized(record);
            break;
        case EventKind::report_purchased:
            apply_purchase(record);
            break;
        case EventKind::block_acked:
            apply_ack(record);
            break;
        }
    }
    catch (const Error& e)
    {
        if (e.code() == "LOG_CORRUPT")
            throw;
        throw Error("LOG_CORRUPT", "event " + std::to_string(record.seq) + " does not replay: " + e.what());
    }
    catch (const json::exception& e)
    {
        throw Error("LOG_CORRUPT", "event " + std::to_string(record.seq) + " is malformed: " + e.what());
    }
    if (options_.on_event)
        options_.on_event(record);
}

// --- creation ---------------------------------------------------------------

void Session::apply_created(const EventRecord& record, bool live)
{
    session_id_ = record.payload.at("session_id").get<std::string>();
    const json genesis{
        {"session_id", session_id_},
        {"config_digest", hex_of(config_digest_)},
        {"config", record.payload.at("config")},
    };
    const auto sender = ledger_.coordinator().address;
    auto tx = ledger_.build_transaction(sender, TxKind::genesis_params, ledger::canonical_encoding(genesis));
    const auto& block = ledger_.append_block({std::move(tx)}, 0, false, record.payload.at("timestamp").get<std::int64_t>());
    if (live)
    {
        if (chain_file_)
            chain_file_->rewrite(ledger_.blocks());
        commit_event(record);
    }
    acks_.track(block.block_hash, record.time_ms);
    if (options_.on_event)
        options_.on_event(record);
}

// --- registration -----------------------------------------------------------

Registration Session::register_team(const std::string& name)
{
    std::lock_guard lock(mutex_);
    if (phase_ != Phase::setup)
        throw Error("SESSION_STARTED", "registration closed when the first plan was accepted");
    if (name.empty() || name.size() > 64)
        throw Error("INVALID_NAME", "team name must be 1 to 64 bytes");
    if (std::ranges::any_of(teams_, [&](const TeamRecord& t) { return t.info.name == name; }))
        throw Error("NAME_TAKEN", "team name '" + name + "' is already registered");
    if (teams_.size() >= ledger::kMockAccountCount)
        throw Error("ACCOUNTS_EXHAUSTED", "all " + std::to_string(ledger::kMockAccountCount) +
                                              " ledger accounts are assigned");

    std::string token;
    if (config_.deterministic)
        token = hex_of(ledger::sha256("marksim team token " + session_id_ + " " + name)).substr(0, 32);
    else
    {
        const auto bytes = ledger::random_seed();
        token = to_hex(std::span(bytes).first(16));
    }

    const auto team_id = static_cast<int>(teams_.size()) + 1;
    const auto record = make_event(EventKind::team_registered, {
                                                                   {"team_id", team_id},
                                                                   {"name", name},
                                                                   {"token", token},
                                                               });
    commit_event(record);
    apply_registered(record);
    if (options_.on_event)
        options_.on_event(record);

    const auto& t = teams_.back();
    return Registration{t.info, ledger::mock_account_seed(t.info.account), t.state.remaining_budget};
}

void Session::apply_registered(const EventRecord& record)
{
    const auto& p = record.payload;
    const auto team_id = p.at("team_id").get<int>();
    if (team_id != static_cast<int>(teams_.size()) + 1 || teams_.size() >= ledger::kMockAccountCount)
        throw Error("LOG_CORRUPT", "unexpected team id " + std::to_string(team_id));
    TeamRecord t;
    t.info.team_id = team_id;
    t.info.name = p.at("name").get<std::string>();
    t.info.token = p.at("token").get<std::string>();
    t.info.account = teams_.size();
    t.info.address = ledger_.mock_accounts()[t.info.account].address;
    t.state = engine::initial_team_state(team_id, config_);
    teams_.push_back(std::move(t));
}

// --- plans ------------------------------------------------------------------

SubmitReceipt Session::submit_plan(const engine::WeeklyPlan& plan)
{
    std::lock_guard lock(mutex_);
    if (phase_ == Phase::finished)
        throw Error("SIMULATION_FINISHED", "all turns have been played");
    const auto& t = team(plan.team_id);
    if (plan.week != week_)
        throw Error("WRONG_WEEK", "plans are accepted for week " + std::to_string(week_) + " only");
    if (plans_[week_].contains(plan.team_id))
        throw Error("ALREADY_SUBMITTED", "team " + std::to_string(plan.team_id) + " already submitted week " +
                                             std::to_string(week_));

    auto checked = engine::validate_plan(plan, config_, t.state);
    if (!checked.ok())
    {
        const auto code = checked.violations.front().code;
        throw Error(code, "plan rejected", std::move(checked.violations));
    }

    const auto record = make_event(EventKind::plan_submitted, {{"plan", engine::plan_to_json(plan)}});
    commit_event(record);
    apply_plan(record);
    if (options_.on_event)
        options_.on_event(record);
    return SubmitReceipt{plan.team_id, plan.week, t.state.remaining_budget - locked_plan_cost(plan.team_id)};
}

void Session::apply_plan(const EventRecord& record)
{
    const auto plan = engine::plan_from_json(record.payload.at("plan"));
    if (plan.week != week_)
        throw Error("LOG_CORRUPT", "plan for week " + std::to_string(plan.week) + " while at week " +
                                       std::to_string(week_));
    auto checked = engine::validate_plan(plan, config_, team(plan.team_id).state);
    if (!checked.ok())
        throw Error("LOG_CORRUPT", "recorded plan no longer validates");
    plans_[week_].insert_or_assign(plan.team_id, std::move(*checked.plan));
    if (phase_ == Phase::setup)
        phase_ = Phase::accepting_plans;
}

std::int64_t Session::locked_plan_cost(int team_id) const
{
    const auto week = plans_.find(week_);
    if (week == plans_.end())
        return 0;
    const auto plan = week->second.find(team_id);
    if (plan == week->second.end())
        return 0;
    return plan->second.total_budget() +
           (plan->second.market_report_requested() ? config_.constants.market_report_price : 0);
}

// --- finalization -----------------------------------------------------------

FinalizeReceipt Session::finalize_turn(std::optional<int> week, std::optional<std::uint64_t> gas_price)
{
    std::unique_lock gate(finalize_gate_, std::try_to_lock);
    if (!gate.owns_lock())
        throw Error("ALREADY_FINALIZING", "a finalization is in progress");

    std::lock_guard lock(mutex_);
    if (week && *week < week_)
        throw Error("ALREADY_FINALIZING", "week " + std::to_string(*week) + " is already finalized");
    if (phase_ == Phase::finished)
        throw Error("SIMULATION_FINISHED", "all turns have been played");
    if (week && *week > week_)
        throw Error("WRONG_WEEK", "the current week is " + std::to_string(week_));
    if (teams_.empty())
        throw Error("EMPTY_SESSION", "no team has registered");
    if (gas_price && *gas_price == 0)
        throw Error("INVALID_GAS_PRICE", "gas price must be positive");

    const auto previous_phase = phase_;
    phase_ = Phase::finalizing;
    const auto savepoint = ledger_.save();
    const auto timestamp = block_timestamp();
    try
    {
        auto commit = compute_turn(week_, timestamp, gas_price);
        if (chain_file_)
            chain_file_->append(*commit.block);
        json payload{
            {"week", commit.week},
            {"timestamp", timestamp},
            {"block_hash", hex_of(commit.block->block_hash)},
        };
        if (gas_price)
            payload["gas_price"] = *gas_price;
        const auto record = make_event(EventKind::turn_finalized, std::move(payload));
        commit_event(record);

        FinalizeReceipt receipt{commit.week, commit.test, commit.block->height, commit.block->block_hash,
                                commit.block->transactions.size(), Phase::accepting_plans};
        install_turn(std::move(commit), record.time_ms);
        receipt.phase = phase_;
        if (options_.on_event)
            options_.on_event(record);
        return receipt;
    }
    catch (...)
    {
        ledger_.rollback(savepoint);
        if (chain_file_)
            chain_file_->rewrite(ledger_.blocks());
        phase_ = previous_phase;
        throw;
    }
}

Session::TurnCommit Session::compute_turn(int week, std::int64_t timestamp, std::optional<std::uint64_t> gas_price)
{
    TurnCommit c;
    c.week = week;
    c.test = config_.is_test_week(week);

    engine::MarketState market{week, {}};
    for (const auto& t : teams_)
        market.teams.push_back(t.state);
    const auto& plans = plans_[week];
    auto result = engine::advance_turn(market, plans, config_, config_.seed);
    c.next = std::move(result.next);

    const auto market_report = engine::build_market_report(week, result.outcomes, config_);
    c.market = engine::market_report_to_json(market_report);

    std::vector<ledger::Transaction> txs;
    json digests = json::object();
    json summary = json::array();
    for (const auto& t : teams_)
    {
        const auto& outcome = result.outcomes.at(t.info.team_id);
        const auto plan = plans.find(t.info.team_id);
        const bool purchased = plan != plans.end() && plan->second.market_report_requested();
        const auto report = engine::build_reports(outcome, config_.global_metrics, market_report, purchased, c.test);
        auto doc = engine::report_to_json(report, config_);
        auto payload = ledger::canonical_encoding(doc);
        const auto digest = ledger::sha256(payload);
        txs.push_back(ledger_.build_transaction(t.info.address, TxKind::turn_report, std::move(payload), gas_price));
        if (purchased)
        {
            c.purchased.insert(t.info.team_id);
            const json receipt{
                {"team_id", t.info.team_id},
                {"week", week},
                {"price", config_.constants.market_report_price},
            };
            txs.push_back(ledger_.build_transaction(t.info.address, TxKind::market_report_purchase,
                                                    ledger::canonical_encoding(receipt), gas_price));
        }
        std::int64_t sales = 0;
        for (const auto s : outcome.sales)
            sales += s;
        c.sales[t.info.team_id] = sales;
        digests[std::to_string(t.info.team_id)] = hex_of(digest);
        summary.push_back({{"team_id", t.info.team_id}, {"sales", sales}, {"remaining_budget", outcome.remaining_budget}});
        c.reports.emplace(t.info.team_id, std::move(doc));
    }

    const json market_digest{
        {"week", week},
        {"test", c.test},
        {"market_digest", hex_of(ledger::canonical_digest(c.market))},
        {"report_digests", std::move(digests)},
        {"teams", std::move(summary)},
    };
    txs.push_back(ledger_.build_transaction(ledger_.coordinator().address, TxKind::turn_report,
                                            ledger::canonical_encoding(market_digest), gas_price));
    c.block = &ledger_.append_block(std::move(txs), week, c.test, timestamp);
    return c;
}

void Session::install_turn(TurnCommit&& c, std::int64_t committed_ms)
{
    for (auto& [team_id, doc] : c.reports)
        reports_[{team_id, c.week}] = std::move(doc);
    market_reports_[c.week] = std::move(c.market);
    for (const auto team_id : c.purchased)
        purchases_.insert({team_id, c.week});
    if (!c.test)
    {
        for (std::size_t i = 0; i < teams_.size(); ++i)
        {
            teams_[i].state = c.next.teams[i];
            teams_[i].total_sales += c.sales.at(teams_[i].info.team_id);
        }
    }
    acks_.track(c.block->block_hash, committed_ms);
    week_ = c.week + 1;
    phase_ = week_ > config_.last_week() ? Phase::finished : Phase::accepting_plans;
}

void Session::apply_finalized(const EventRecord& record)
{
    const auto& p = record.payload;
    if (p.at("week").get<int>() != week_ || phase_ == Phase::finished || teams_.empty())
        throw Error("LOG_CORRUPT", "finalization of week " + std::to_string(p.at("week").get<int>()) +
                                       " is out of order");
    std::optional<std::uint64_t> gas_price;
    if (p.contains("gas_price"))
        gas_price = p.at("gas_price").get<std::uint64_t>();
    auto commit = compute_turn(week_, p.at("timestamp").get<std::int64_t>(), gas_price);
    check_recorded_block(p, *commit.block);
    install_turn(std::move(commit), record.time_ms);
}

// --- market reports ---------------------------------------------------------

json Session::purchase_market_report(int team_id, int week)
{
    std::lock_guard lock(mutex_);
    const auto& t = team(team_id);
    if (week < 0 || !market_reports_.contains(week))
        throw Error("WEEK_NOT_FINALIZED", "week " + std::to_string(week) + " has not been finalized");
    if (purchases_.contains({team_id, week}))
        return market_reports_.at(week);

    const auto price = config_.constants.market_report_price;
    const auto available = t.state.remaining_budget - locked_plan_cost(team_id);
    if (available < price)
        throw Error("INSUFFICIENT_BUDGET", "the market report costs " + std::to_string(price) + " EUR, " +
                                               std::to_string(available) + " EUR available");

    const auto savepoint = ledger_.save();
    const auto timestamp = block_timestamp();
    try
    {
        const auto& block = stage_purchase(team_id, week, timestamp, std::nullopt);
        if (chain_file_)
            chain_file_->append(block);
        const auto record = make_event(EventKind::report_purchased, {
                                                                        {"team_id", team_id},
                                                                        {"week", week},
                                                                        {"timestamp", timestamp},
                                                                        {"block_hash", hex_of(block.block_hash)},
                                                                    });
        commit_event(record);
        install_purchase(team_id, week, block, record.time_ms);
        if (options_.on_event)
            options_.on_event(record);
    }
    catch (...)
    {
        ledger_.rollback(savepoint);
        if (chain_file_)
            chain_file_->rewrite(ledger_.blocks());
        throw;
    }
    return market_reports_.at(week);
}

const Block& Session::stage_purchase(int team_id, int week, std::int64_t timestamp,
                                     std::optional<std::uint64_t> gas_price)
{
    const json receipt{
        {"team_id", team_id},
        {"week", week},
        {"price", config_.constants.market_report_price},
        {"market_digest", hex_of(ledger::canonical_digest(market_reports_.at(week)))},
    };
    auto tx = ledger_.build_transaction(team(team_id).info.address, TxKind::market_report_purchase,
                                        ledger::canonical_encoding(receipt), gas_price);
    return ledger_.append_block({std::move(tx)}, week, config_.is_test_week(week), timestamp);
}

void Session::install_purchase(int team_id, int week, const Block& block, std::int64_t committed_ms)
{
    team(team_id).state.remaining_budget -= config_.constants.market_report_price;
    purchases_.insert({team_id, week});
    acks_.track(block.block_hash, committed_ms);
}

void Session::apply_purchase(const EventRecord& record)
{
    const auto& p = record.payload;
    const auto team_id = p.at("team_id").get<int>();
    const auto week = p.at("week").get<int>();
    if (!market_reports_.contains(week) || purchases_.contains({team_id, week}))
        throw Error("LOG_CORRUPT", "purchase of week " + std::to_string(week) + " is out of order");
    const auto& block = stage_purchase(team_id, week, p.at("timestamp").get<std::int64_t>(), std::nullopt);
    check_recorded_block(p, block);
    install_purchase(team_id, week, block, record.time_ms);
}

// --- acknowledgments --------------------------------------------------------

ledger::FinalityStatus Session::acknowledge(const Hash& block_hash, int team_id, const ledger::Signature& signature)
{
    std::lock_guard lock(mutex_);
    if (phase_ == Phase::setup)
        throw Error("REGISTRATION_OPEN", "acknowledgments open once registration closes");
    const auto& t = team(team_id);
    const auto* entry = acks_.find(block_hash);
    if (entry == nullptr)
        throw Error("UNKNOWN_BLOCK", "no block " + hex_of(block_hash));
    const auto& key = ledger_.mock_accounts()[t.info.account].keys.public_key();
    if (!ledger::verify_signature(block_hash, signature, key))
        throw Error("BAD_SIGNATURE", "signature does not verify for team " + std::to_string(team_id));

    const bool duplicate = std::ranges::any_of(
        entry->acks, [&](const auto& a) { return a.first.team == t.info.address; });
    if (!duplicate)
    {
        const auto record = make_event(EventKind::block_acked, {
                                                                   {"block_hash", hex_of(block_hash)},
                                                                   {"team_id", team_id},
                                                                   {"signature", to_hex(signature)},
                                                               });
        commit_event(record);
        apply_ack(record);
        if (options_.on_event)
            options_.on_event(record);
    }
    return acks_.status(block_hash, teams_.size(), now(), config_.ack_timeout_ms);
}

void Session::apply_ack(const EventRecord& record)
{
    const auto& p = record.payload;
    const auto& t = team(p.at("team_id").get<int>());
    const auto signature = ledger::fixed_from_hex<64>(p.at("signature").get<std::string>());
    if (!signature)
        throw Error("LOG_CORRUPT", "acknowledgment signature is not hex");
    const ledger::Acknowledgment ack{hash_field(p, "block_hash"), t.info.address, *signature};
    const auto* entry = acks_.find(ack.block_hash);
    const auto at = entry ? std::max(record.time_ms, entry->committed_ms) : record.time_ms;
    acks_.record(ack, ledger_.mock_accounts()[t.info.account].keys.public_key(), at, teams_.size(),
                 config_.ack_timeout_ms);
}

// --- queries ----------------------------------------------------------------

Session::TeamRecord& Session::team(int team_id)
{
    if (team_id < 1 || team_id > static_cast<int>(teams_.size()))
        throw Error("UNKNOWN_TEAM", "no team " + std::to_string(team_id));
    return teams_[static_cast<std::size_t>(team_id - 1)];
}

const Session::TeamRecord& Session::team(int team_id) const
{
    return const_cast<Session*>(this)->team(team_id);
}

json Session::report(int team_id, int week) const
{
    std::lock_guard lock(mutex_);
    const auto it = reports_.find({team_id, week});
    if (it == reports_.end())
        throw Error("NOT_FOUND", "no report for team " + std::to_string(team_id) + " week " + std::to_string(week));
    auto doc = it->second;
    if (!doc.contains("market_report") && purchases_.contains({team_id, week}))
        doc["market_report"] = market_reports_.at(week);
    return doc;
}

json Session::blocks(std::uint64_t from, std::uint64_t to) const
{
    std::lock_guard lock(mutex_);
    const auto t = now();
    json out = json::array();
    const auto& chain = ledger_.blocks();
    for (auto h = from; h <= to && h < chain.size(); ++h)
    {
        const auto& b = chain[h];
        json acked_by = json::array();
        if (const auto* entry = acks_.find(b.block_hash))
        {
            for (const auto& [ack, at] : entry->acks)
            {
                for (const auto& team : teams_)
                {
                    if (team.info.address == ack.team)
                        acked_by.push_back(team.info.team_id);
                }
            }
        }
        out.push_back(block_summary(b, acks_.status(b.block_hash, teams_.size(), t, config_.ack_timeout_ms),
                                    std::move(acked_by)));
    }
    return out;
}

ledger::FinalityStatus Session::block_status(const Hash& block_hash) const
{
    std::lock_guard lock(mutex_);
    if (acks_.find(block_hash) == nullptr)
        throw Error("UNKNOWN_BLOCK", "no block " + hex_of(block_hash));
    return acks_.status(block_hash, teams_.size(), now(), config_.ack_timeout_ms);
}

json Session::standings_table() const
{
    const auto fees = ledger::fees_by_sender(ledger_.blocks());
    std::vector<const TeamRecord*> order;
    for (const auto& t : teams_)
        order.push_back(&t);
    std::ranges::stable_sort(order, [](const TeamRecord* a, const TeamRecord* b) {
        return a->total_sales > b->total_sales;
    });
    json rows = json::array();
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        const auto& t = *order[i];
        const auto fee = fees.find(t.info.address);
        rows.push_back({
            {"rank", i + 1},
            {"team_id", t.info.team_id},
            {"name", t.info.name},
            {"total_sales", t.total_sales},
            {"remaining_budget", t.state.remaining_budget},
            {"address", ledger::to_string(t.info.address)},
            {"fees_wei", ledger::to_string(fee == fees.end() ? ledger::Wei{0} : fee->second)},
        });
    }
    return rows;
}

json Session::standings(std::optional<int> viewer) const
{
    std::lock_guard lock(mutex_);
    const auto rows = standings_table();
    json doc{{"week", week_}, {"phase", std::string(to_string(phase_))}, {"team_count", teams_.size()}};
    if (!viewer)
    {
        doc["teams"] = rows;
        return doc;
    }
    team(*viewer);
    for (const auto& row : rows)
        if (row.at("team_id").get<int>() == *viewer)
            doc["own"] = row;
    return doc;
}

std::vector<ledger::TxMetric> Session::metrics() const
{
    std::lock_guard lock(mutex_);
    return ledger::record_metrics(ledger_.blocks(), acks_, teams_.size(), now(), config_.ack_timeout_ms);
}

std::string Session::metrics_csv() const
{
    const auto m = metrics();
    return ledger::metrics_csv(m);
}

json Session::snapshot() const
{
    std::lock_guard lock(mutex_);
    json teams = json::array();
    for (const auto& t : teams_)
        teams.push_back({
            {"team_id", t.info.team_id},
            {"name", t.info.name},
            {"address", ledger::to_string(t.info.address)},
            {"token", t.info.token},
            {"state", engine::team_state_to_json(t.state)},
            {"total_sales", t.total_sales},
        });
    json plans = json::object();
    for (const auto& [week, by_team] : plans_)
        for (const auto& [team_id, plan] : by_team)
            plans[std::to_string(week)][std::to_string(team_id)] = engine::plan_to_json(plan.source());
    json reports = json::object();
    for (const auto& [key, _] : reports_)
        reports[std::to_string(key.first) + "/" + std::to_string(key.second)] = report(key.first, key.second);
    json chain = json::array();
    for (const auto& b : ledger_.blocks())
        chain.push_back(ledger::block_to_json(b));
    json acks = json::object();
    for (const auto& [hash, entry] : acks_.entries())
    {
        json list = json::array();
        for (const auto& [ack, at] : entry.acks)
            list.push_back({{"team", ledger::to_string(ack.team)}, {"at", at}});
        acks[hex_of(hash)] = {
            {"committed", entry.committed_ms},
            {"acks", std::move(list)},
            {"latched", entry.latched ? json(std::string(to_string(*entry.latched))) : json(nullptr)},
            {"final", entry.final_ms},
        };
    }
    json balances = json::array();
    for (const auto& a : ledger_.mock_accounts())
        balances.push_back({{"address", ledger::to_string(a.address)}, {"balance", ledger::to_string(a.balance)},
                            {"nonce", a.nonce}});
    return {
        {"session_id", session_id_},
        {"phase", std::string(to_string(phase_))},
        {"week", week_},
        {"teams", std::move(teams)},
        {"plans", std::move(plans)},
        {"reports", std::move(reports)},
        {"market_reports", [&] {
             json m = json::object();
             for (const auto& [week, doc] : market_reports_)
                 m[std::to_string(week)] = doc;
             return m;
         }()},
        {"standings", standings_table()},
        {"chain", std::move(chain)},
        {"acks", std::move(acks)},
        {"balances", std::move(balances)},
        {"coordinator_balance", ledger::to_string(ledger_.coordinator().balance)},
        {"burned", ledger::to_string(ledger_.burned())},
    };
}

std::optional<int> Session::team_for_token(const std::string& token) const
{
    std::lock_guard lock(mutex_);
    for (const auto& t : teams_)
        if (!token.empty() && t.info.token == token)
            return t.info.team_id;
    return std::nullopt;
}

std::vector<TeamInfo> Session::teams() const
{
    std::lock_guard lock(mutex_);
    std::vector<TeamInfo> out;
    for (const auto& t : teams_)
        out.push_back(t.info);
    return out;
}

std::vector<Block> Session::chain() const
{
    std::lock_guard lock(mutex_);
    return ledger_.blocks();
}

Phase Session::phase() const
{
    std::lock_guard lock(mutex_);
    return phase_;
}

int Session::current_week() const
{
    std::lock_guard lock(mutex_);
    return week_;
}

std::size_t Session::event_count() const
{
    std::lock_guard lock(mutex_);
    return log_.size();
}

ledger::Wei Session::total_wei() const
{
    std::lock_guard lock(mutex_);
    return ledger_.total_wei();
}

}  // namespace marksim::server
