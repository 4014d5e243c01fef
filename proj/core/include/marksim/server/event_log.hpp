// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace marksim::server
{
enum class EventKind
{
    sim_created,
    team_registered,
    plan_submitted,
    turn_finalized,
    report_purchased,
    block_acked,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept;

struct EventRecord
{
    std::uint64_t seq = 0;
    EventKind kind = EventKind::sim_created;
    nlohmann::json payload;
    std::int64_t time_ms = 0;

    bool operator==(const EventRecord&) const = default;
};

std::string encode_event_line(const EventRecord& record);

/// Append-only, fsynced JSONL record of every state-changing request.
/// Without a path the log lives in memory only.
class EventLog
{
public:
    EventLog() = default;
    explicit EventLog(std::filesystem::path path);

    /// Appends `record` (whose seq must equal size()) and returns once it is
    /// durable. Throws Error{IO_ERROR}.
    void append(const EventRecord& record);

    /// Replaces the file with the given records.
    void reset(std::vector<EventRecord> records);

    [[nodiscard]] const std::vector<EventRecord>& records() const noexcept { return records_; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

    /// Reads a log file. A final line without its terminator that does not
    /// decode is a torn write and is dropped. Throws Error{LOG_CORRUPT} naming
    /// the first missing or undecodable seq.
    static std::vector<EventRecord> read(const std::filesystem::path& path);

private:
    std::optional<std::filesystem::path> path_;
    std::vector<EventRecord> records_;
};

}  // namespace marksim::server
