// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "reference/reference_engine.hpp"
#include "support/support.hpp"

#include <marksim/engine/engine.hpp>
#include <marksim/ledger/chain_file.hpp>
#include <marksim/ledger/finality.hpp>
#include <marksim/ledger/gas.hpp>
#include <marksim/ledger/ledger.hpp>
#include <marksim/ledger/verify.hpp>
#include <marksim/server/api.hpp>
#include <marksim/server/session.hpp>
#include <marksim/tools/bots.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace marksim;
using nlohmann::json;

namespace
{
using Clock = std::chrono::steady_clock;

class Check
{
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok && first_.empty())
            first_ = what;
        ok_ = ok_ && ok;
    }
    [[nodiscard]] bool ok() const noexcept { return ok_; }
    [[nodiscard]] const std::string& first_failure() const noexcept { return first_; }
    std::string note;

private:
    bool ok_ = true;
    std::string first_;
};

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void streak_schedule(Check& c)
{
    const auto start = Clock::now();
    c.expect(engine::streak_multiplier(2) == 1.20, "s=2");
    c.expect(engine::streak_multiplier(3) == 1.20, "s=3");
    c.expect(engine::streak_multiplier(4) == 1.00, "s=4");
    c.expect(engine::streak_multiplier(5) == 0.75, "s=5");
    c.expect(engine::streak_multiplier(6) == 0.55, "s=6");
    const auto ms = elapsed_ms(start);
    c.expect(ms < 1.0, "took " + std::to_string(ms) + " ms");
}

void table1_end_to_end(Check& c)
{
    const auto start = Clock::now();
    const auto config = default_config();
    const auto plan = testing_support::table1_fixture(1, 0);
    std::int64_t total = 0;
    for (const auto& a : plan.allocations)
        total += a.budget;
    c.expect(plan.allocations.size() == 8 && total == 2'400, "fixture is not 8 rows totalling 2400");

    const auto state = engine::initial_team_state(1, config);
    const auto v = engine::validate_plan(plan, config, state);
    c.expect(v.ok(), "fixture does not validate");
    if (!v.ok())
        return;

    const auto spend = engine::effective_spend(*v.plan, config);
    const auto totals = engine::product_totals(spend);
    c.expect(totals[0] == 1'520 && totals[1] == 670 && totals[2] == 210, "per-product spend");

    const double hhi = (1520.0 * 1520.0 + 670.0 * 670.0 + 210.0 * 210.0) / (2400.0 * 2400.0);
    const double focus_oracle = 1.0 + 0.25 * (hhi - 1.0 / 3.0) / (2.0 / 3.0);
    const auto outcome = engine::advance_turn({0, {state}}, {{1, *v.plan}}, config, config.seed).outcomes.at(1);
    c.expect(std::abs(outcome.focus_multiplier - 1.058) <= 0.001, "focus multiplier");
    c.expect(std::abs(outcome.focus_multiplier - focus_oracle) <= 1e-12, "focus against the HHI oracle");

    const auto ref = reference::run_turn(config, reference::initial_state(config), plan, config.seed);
    c.expect(outcome.sales == ref.sales, "sales");
    c.expect(outcome.streaks == ref.streaks, "streaks");
    c.expect(outcome.remaining_budget == ref.remaining_budget, "remaining budget");
    c.expect(outcome.focus_multiplier == ref.focus, "focus");
    c.expect(outcome.synergy_multiplier == ref.synergy, "synergy");
    for (std::size_t p = 0; p < engine::kProductCount; ++p)
    {
        c.expect(outcome.pressures[p] == ref.pressures[p], "pressure");
        c.expect(outcome.loyalty_after[p] == ref.loyalty[p], "loyalty");
    }
    c.expect(outcome.social_after.likes == ref.likes && outcome.social_after.page_views == ref.page_views &&
                 outcome.social_after.avg_post_reach == ref.reach &&
                 outcome.social_after.post_engagement == ref.engagement,
             "social metrics");
    const auto ms = elapsed_ms(start);
    c.expect(ms < 1'000.0, "took " + std::to_string(ms) + " ms");
    std::ostringstream note;
    note << "spend (" << totals[0] << ", " << totals[1] << ", " << totals[2] << "), focus " << outcome.focus_multiplier;
    c.note = note.str();
}

void gas_fixtures(Check& c)
{
    const ledger::GasSchedule schedule;
    c.expect(ledger::intrinsic_gas({}, schedule) == 21'000, "empty payload gas");
    c.expect(ledger::fee(21'000, schedule.gas_price) == ledger::Wei{420'000'000'000'000ULL}, "fee");

    ledger::Ledger ledger(schedule);
    const auto sender = ledger.mock_accounts()[0].address;
    // 98,543 non-zero bytes cost 6,721,924 gas; one more byte exceeds the limit.
    const std::string fits(98'543, 'x');
    const std::string too_big(98'544, 'x');
    try
    {
        ledger.build_transaction(sender, ledger::TxKind::turn_report, fits);
    }
    catch (const Error& e)
    {
        c.expect(false, std::string("payload at the limit was refused: ") + e.what());
    }
    try
    {
        ledger.build_transaction(sender, ledger::TxKind::turn_report, too_big);
        c.expect(false, "payload over the limit was accepted");
    }
    catch (const Error& e)
    {
        c.expect(e.code() == "GAS_LIMIT_EXCEEDED", "wrong refusal code " + e.code());
    }

    c.expect(ledger.mock_accounts().size() == 10, "mock account count");
    auto session = server::Session::create(default_config(), {});
    for (int i = 0; i < 10; ++i)
        session->register_team("team-" + std::to_string(i));
    try
    {
        session->register_team("eleventh");
        c.expect(false, "an 11th account was handed out");
    }
    catch (const Error& e)
    {
        c.expect(e.code() == "ACCOUNTS_EXHAUSTED", "wrong refusal code " + e.code());
    }
}

void tamper_detection(Check& c)
{
    const auto start = Clock::now();
    std::vector<std::string> lines;
    for (const auto& b : testing_support::build_chain(20, 99))
        lines.push_back(ledger::encode_block_line(b));
    c.expect(!ledger::verify_chain_lines(lines), "intact chain rejected");

    std::mt19937_64 rng(2026);
    int detected = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto mutated = lines;
        const auto h = rng() % mutated.size();
        const auto pos = rng() % mutated[h].size();
        mutated[h][pos] = static_cast<char>(mutated[h][pos] ^ (1 << (rng() % 8)));
        const auto fault = ledger::verify_chain_lines(mutated);
        detected += fault && fault->height == h;
    }
    const auto ms = elapsed_ms(start);
    c.expect(detected == 1000, std::to_string(detected) + "/1000 at the right height");
    c.expect(ms < 10'000.0, "took " + std::to_string(ms) + " ms");
    c.note = std::to_string(detected) + "/1000 detected in " + std::to_string(static_cast<int>(ms)) + " ms";
}

void consensus(Check& c)
{
    using ledger::Finality;
    c.expect(ledger::finality(9, 10, false).state == Finality::pending, "9/10 without timeout");
    c.expect(ledger::finality(10, 10, false).state == Finality::final_unanimous, "10/10");
    c.expect(ledger::finality(7, 10, true).state == Finality::final_quorum, "7/10 after timeout");
    c.expect(ledger::finality(6, 10, true).state == Finality::stalled, "6/10 after timeout");

    for (std::size_t n = 2; n <= 10; ++n)
    {
        const std::size_t q = (2 * n + 2) / 3;
        for (std::size_t a = 0; a <= n; ++a)
        {
            for (const bool timeout : {false, true})
            {
                const auto s = ledger::finality(a, n, timeout);
                Finality want = Finality::pending;
                if (a == n)
                    want = Finality::final_unanimous;
                else if (timeout)
                    want = a >= q ? Finality::final_quorum : Finality::stalled;
                c.expect(s.state == want && s.required == n,
                         "n=" + std::to_string(n) + " acks=" + std::to_string(a));
            }
        }
    }

    ledger::AckBook book;
    const ledger::Hash block = ledger::sha256(std::string("block"));
    book.track(block, 0);
    for (std::size_t i = 0; i < 10; ++i)
    {
        const ledger::KeyPair keys(ledger::mock_account_seed(i));
        const auto status = book.status(block, 10, 0, 1'000);
        c.expect(status.state == Finality::pending, "final before every team acked");
        book.record(ledger::acknowledge(block, keys), keys.public_key(), 10, 10, 1'000);
    }
    c.expect(book.status(block, 10, 10, 1'000).state == Finality::final_unanimous, "signed 10/10");
}

struct GameRun
{
    tools::BotSummary summary;
    json final_snapshot;
    std::string metrics_csv;
};

void determinism_recovery(Check& c, GameRun& first)
{
    const auto start = Clock::now();
    testing_support::TempDir dir;
    std::vector<json> snapshots;
    server::Session* current = nullptr;
    server::SessionOptions options;
    options.event_log = dir / "events.log";
    options.chain_file = dir / "chain.jsonl";
    options.on_event = [&](const server::EventRecord&) {
        if (current != nullptr)
            snapshots.push_back(current->snapshot());
    };

    const auto config = default_config();
    const tools::BotOptions bots{10, 0, tools::Strategy::random_valid, true};
    {
        server::Api api("admin", options);
        auto session = server::Session::create(config, options);
        current = session.get();
        snapshots.push_back(session->snapshot());
        api.attach(std::move(session));
        tools::LocalTransport transport(api);
        tools::SimClient client(transport, "admin");
        first.summary = tools::run_bots(client, config, bots);
        first.final_snapshot = current->snapshot();
        first.metrics_csv = current->metrics_csv();
        current = nullptr;
    }

    tools::BotSummary second;
    {
        server::Api api("admin", {});
        api.attach(server::Session::create(config, {}));
        tools::LocalTransport transport(api);
        tools::SimClient client(transport, "admin");
        second = tools::run_bots(client, config, bots);
    }
    const auto run_ms = elapsed_ms(start);
    c.expect(first.summary.turns == 13, "turns");
    c.expect(first.summary.standings == second.standings, "standings differ between runs");
    c.expect(first.summary.block_hashes == second.block_hashes, "block hashes differ between runs");

    std::vector<std::string> lines;
    {
        std::istringstream in(testing_support::read_text(dir / "events.log"));
        for (std::string line; std::getline(in, line);)
            lines.push_back(line + "\n");
    }
    c.expect(lines.size() == snapshots.size(), "one snapshot per event");

    std::size_t matched = 0;
    std::string prefix;
    for (std::size_t k = 0; k < lines.size() && k < snapshots.size(); ++k)
    {
        prefix += lines[k];
        testing_support::TempDir crash;
        testing_support::write_text(crash / "events.log", prefix);
        server::SessionOptions replay;
        replay.event_log = crash / "events.log";
        replay.chain_file = crash / "chain.jsonl";
        const auto s = server::Session::recover(replay);
        const bool same = s && s->snapshot() == snapshots[k];
        c.expect(same, "replay differs at event " + std::to_string(k));
        matched += same;
    }
    c.expect(matched > 0 && first.final_snapshot == snapshots.back(), "final state");
    const auto total_ms = elapsed_ms(start);
    c.expect(run_ms < 30'000.0, "bot runs took " + std::to_string(run_ms) + " ms");
    c.note = "2 runs in " + std::to_string(static_cast<int>(run_ms)) + " ms, " + std::to_string(matched) + "/" +
             std::to_string(lines.size()) + " event boundaries replayed in " +
             std::to_string(static_cast<int>(total_ms - run_ms)) + " ms";
}

void oracle_equivalence(Check& c)
{
    const auto config = default_config();
    std::mt19937_64 rng(20260101);
    int matched = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto state = engine::initial_team_state(1, config);
        const auto plan = testing_support::random_valid_plan(rng, config, 1, 0, state.remaining_budget);
        const auto v = engine::validate_plan(plan, config, state);
        if (!v.ok())
        {
            c.expect(false, "generated plan " + std::to_string(i) + " is invalid");
            continue;
        }
        const auto o = engine::advance_turn({0, {state}}, {{1, *v.plan}}, config, 0).outcomes.at(1);
        const auto r = reference::run_turn(config, reference::initial_state(config), plan, 0);
        auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
        bool same = o.sales == r.sales && o.streaks == r.streaks && o.remaining_budget == r.remaining_budget &&
                    near(o.focus_multiplier, r.focus) && near(o.synergy_multiplier, r.synergy) &&
                    o.social_after.likes == r.likes && o.social_after.page_views == r.page_views &&
                    o.social_after.avg_post_reach == r.reach &&
                    near(o.social_after.post_engagement, r.engagement);
        for (std::size_t p = 0; p < engine::kProductCount; ++p)
            same = same && near(o.pressures[p], r.pressures[p]) && near(o.loyalty_after[p], r.loyalty[p]) &&
                   near(o.streak_multipliers[p], r.streak_multipliers[p]);
        for (std::size_t ch = 0; ch < config.channels.size(); ++ch)
        {
            for (std::size_t p = 0; p < engine::kProductCount; ++p)
                same = same && near(o.effective_spend[ch][p], r.spend[ch][p]);
            const auto it = r.quality.find(ch);
            same = same && o.quality_scores[ch].has_value() == (it != r.quality.end()) &&
                   (!o.quality_scores[ch] || *o.quality_scores[ch] == it->second);
        }
        c.expect(same, "plan " + std::to_string(i) + " differs");
        matched += same;
    }
    c.note = std::to_string(matched) + "/1000 plans match";
}

void latency_metrics(Check& c, const GameRun& run)
{
    std::istringstream in(run.metrics_csv);
    std::string line;
    std::getline(in, line);
    c.expect(line == ledger::kMetricsCsvHeader, "csv header");
    std::size_t rows = 0;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');)
            cells.push_back(cell);
        if (cells.size() != 7)
        {
            c.expect(false, "row " + std::to_string(rows) + " has " + std::to_string(cells.size()) + " cells");
            continue;
        }
        try
        {
            const auto submit = std::stoll(cells[1]);
            const auto final_ms = std::stoll(cells[2]);
            const auto latency = std::stoll(cells[3]);
            c.expect(latency >= 0 && final_ms - submit == latency, "latency on row " + std::to_string(rows));
            c.expect(std::stoull(cells[4]) >= 21'000 && ledger::wei_from_string(cells[5]).has_value(),
                     "gas or fee on row " + std::to_string(rows));
        }
        catch (const std::exception&)
        {
            c.expect(false, "row " + std::to_string(rows) + " does not parse");
        }
        ++rows;
    }
    std::size_t committed = 0;
    for (const auto& b : run.final_snapshot.at("chain"))
        committed += b.at("transactions").size();
    c.expect(rows == committed, std::to_string(rows) + " rows for " + std::to_string(committed) + " transactions");

    double worst = 0.0;
    for (const auto ms : run.summary.finality_ms)
        worst = std::max(worst, ms);
    c.expect(run.summary.finality_ms.size() == run.summary.block_hashes.size(), "every block reached finality");
    c.expect(worst < 500.0, "slowest block took " + std::to_string(worst) + " ms");
    std::ostringstream note;
    note << rows << " transactions, " << run.summary.finality_ms.size() << " blocks, worst finality " << worst
         << " ms";
    c.note = note.str();
}

}  // namespace

int main()
{
    int failures = 0;
    GameRun game;
    auto run = [&](const char* name, const std::function<void(Check&)>& body) {
        Check c;
        const auto start = Clock::now();
        try
        {
            body(c);
        }
        catch (const std::exception& e)
        {
            c.expect(false, std::string("threw: ") + e.what());
        }
        const auto ms = elapsed_ms(start);
        std::cout << (c.ok() ? "PASS " : "FAIL ") << name << " (" << static_cast<long long>(std::llround(ms))
                  << " ms)";
        if (!c.ok())
            std::cout << ": " << c.first_failure();
        else if (!c.note.empty())
            std::cout << ": " << c.note;
        std::cout << std::endl;
        failures += c.ok() ? 0 : 1;
    };

    run("streak_schedule", streak_schedule);
    run("table1_end_to_end", table1_end_to_end);
    run("gas_fixtures", gas_fixtures);
    run("tamper_detection", tamper_detection);
    run("consensus", consensus);
    run("determinism_and_recovery", [&](Check& c) { determinism_recovery(c, game); });
    run("oracle_equivalence", oracle_equivalence);
    run("latency_metrics", [&](Check& c) { latency_metrics(c, game); });
    return failures == 0 ? 0 : 1;
}
