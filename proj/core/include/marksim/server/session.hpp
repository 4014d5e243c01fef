// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>
#include <marksim/engine/types.hpp>
#include <marksim/ledger/chain_file.hpp>
#include <marksim/ledger/finality.hpp>
#include <marksim/ledger/ledger.hpp>
#include <marksim/ledger/metrics.hpp>
#include <marksim/server/event_log.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace marksim::server
{
enum class Phase
{
    setup,
    accepting_plans,
    finalizing,
    finished,
};

std::string_view to_string(Phase phase) noexcept;

struct SessionOptions
{
    std::optional<std::filesystem::path> event_log;
    std::optional<std::filesystem::path> chain_file;
    /// Wall clock in milliseconds; defaults to the system clock.
    std::function<std::int64_t()> clock;
    /// Called after each event has been applied, with the session lock held.
    std::function<void(const EventRecord&)> on_event;
};

struct TeamInfo
{
    int team_id = 0;
    std::string name;
    std::size_t account = 0;  ///< index into the mock accounts
    ledger::Address address{};
    std::string token;
};

struct Registration
{
    TeamInfo team;
    ledger::Seed secret{};  ///< the account's signing seed
    std::int64_t budget = 0;
};

struct SubmitReceipt
{
    int team_id = 0;
    int week = 0;
    std::int64_t budget_after = 0;
};

struct FinalizeReceipt
{
    int week = 0;
    bool test = false;
    std::uint64_t height = 0;
    ledger::Hash block_hash{};
    std::size_t tx_count = 0;
    Phase phase = Phase::accepting_plans;
};

/// One simulation: teams, plans, the engine and the report ledger. Every
/// mutation is first written to the event log; replaying the log rebuilds the
/// same state. All members are thread-safe.
class Session
{
public:
    /// Throws Error{INVALID_CONFIG}.
    static std::unique_ptr<Session> create(const SimulationConfig& config, SessionOptions options = {});

    /// Rebuilds a session from `options.event_log`, rewriting the chain file
    /// to match. Returns null when the log holds no events. Throws
    /// Error{LOG_CORRUPT}.
    static std::unique_ptr<Session> recover(SessionOptions options);

    ~Session();
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    /// Throws SESSION_STARTED, INVALID_NAME, NAME_TAKEN, ACCOUNTS_EXHAUSTED.
    Registration register_team(const std::string& name);

    /// Throws SIMULATION_FINISHED, UNKNOWN_TEAM, WRONG_WEEK, ALREADY_SUBMITTED
    /// or the plan's own violations.
    SubmitReceipt submit_plan(const engine::WeeklyPlan& plan);

    /// Runs the engine for the current week and commits its block. Throws
    /// ALREADY_FINALIZING, WRONG_WEEK, EMPTY_SESSION, SIMULATION_FINISHED.
    FinalizeReceipt finalize_turn(std::optional<int> week = std::nullopt,
                                  std::optional<std::uint64_t> gas_price = std::nullopt);

    /// Buys the market report of a finalized week. Throws UNKNOWN_TEAM,
    /// WEEK_NOT_FINALIZED, INSUFFICIENT_BUDGET.
    nlohmann::json purchase_market_report(int team_id, int week);

    /// Throws REGISTRATION_OPEN, UNKNOWN_TEAM, UNKNOWN_BLOCK, BAD_SIGNATURE.
    ledger::FinalityStatus acknowledge(const ledger::Hash& block_hash, int team_id,
                                       const ledger::Signature& signature);

    /// Throws NOT_FOUND.
    [[nodiscard]] nlohmann::json report(int team_id, int week) const;
    [[nodiscard]] nlohmann::json blocks(std::uint64_t from, std::uint64_t to) const;
    /// Full table for the administrator, own row plus rank for a team.
    [[nodiscard]] nlohmann::json standings(std::optional<int> viewer = std::nullopt) const;
    [[nodiscard]] std::string metrics_csv() const;
    [[nodiscard]] std::vector<ledger::TxMetric> metrics() const;
    [[nodiscard]] ledger::FinalityStatus block_status(const ledger::Hash& block_hash) const;

    /// Every API-visible fact that does not depend on the current time.
    [[nodiscard]] nlohmann::json snapshot() const;

    [[nodiscard]] std::optional<int> team_for_token(const std::string& token) const;
    [[nodiscard]] std::vector<TeamInfo> teams() const;
    [[nodiscard]] std::vector<ledger::Block> chain() const;
    [[nodiscard]] const SimulationConfig& config() const noexcept { return config_; }
    [[nodiscard]] Phase phase() const;
    [[nodiscard]] int current_week() const;
    [[nodiscard]] std::size_t event_count() const;
    [[nodiscard]] ledger::Wei total_wei() const;

private:
    struct TeamRecord
    {
        TeamInfo info;
        engine::TeamState state;
        std::int64_t total_sales = 0;
    };

    struct TurnCommit;

    Session(SimulationConfig config, SessionOptions options);

    std::int64_t now() const;
    std::int64_t block_timestamp() const;
    EventRecord make_event(EventKind kind, nlohmann::json payload) const;
    void commit_event(const EventRecord& record);
    void check_recorded_block(const nlohmann::json& payload, const ledger::Block& block) const;

    void apply_created(const EventRecord& record, bool live);
    void apply_registered(const EventRecord& record);
    void apply_plan(const EventRecord& record);
    TurnCommit compute_turn(int week, std::int64_t timestamp, std::optional<std::uint64_t> gas_price);
    void install_turn(TurnCommit&& commit, std::int64_t committed_ms);
    void apply_finalized(const EventRecord& record);
    const ledger::Block& stage_purchase(int team_id, int week, std::int64_t timestamp,
                                        std::optional<std::uint64_t> gas_price);
    void install_purchase(int team_id, int week, const ledger::Block& block, std::int64_t committed_ms);
    void apply_purchase(const EventRecord& record);
    void apply_ack(const EventRecord& record);
    void replay(const EventRecord& record);

    TeamRecord& team(int team_id);
    const TeamRecord& team(int team_id) const;
    std::int64_t locked_plan_cost(int team_id) const;
    nlohmann::json standings_table() const;

    SimulationConfig config_;
    SessionOptions options_;
    mutable std::recursive_mutex mutex_;
    std::mutex finalize_gate_;

    EventLog log_;
    std::optional<ledger::ChainFile> chain_file_;
    ledger::Ledger ledger_;
    ledger::AckBook acks_;

    std::string session_id_;
    ledger::Hash config_digest_{};
    Phase phase_ = Phase::setup;
    int week_ = 0;
    std::vector<TeamRecord> teams_;
    std::map<int, std::map<int, engine::ValidatedPlan>> plans_;  ///< week -> team -> plan
    std::map<std::pair<int, int>, nlohmann::json> reports_;      ///< (team, week) -> report
    std::map<int, nlohmann::json> market_reports_;               ///< week -> market report
    std::set<std::pair<int, int>> purchases_;                    ///< (team, week)
};

}  // namespace marksim::server
