// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/chain_file.hpp>
#include <marksim/server/event_log.hpp>

#include <array>
#include <fstream>
#include <sstream>

namespace marksim::server
{
using nlohmann::json;

namespace
{
constexpr std::array kEventNames{
    std::string_view{"sim_created"},    std::string_view{"team_registered"},  std::string_view{"plan_submitted"},
    std::string_view{"turn_finalized"}, std::string_view{"report_purchased"}, std::string_view{"block_acked"},
};

std::optional<EventRecord> decode_line(const std::string& line)
{
    const auto doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || doc.size() != 4)
        return std::nullopt;
    const auto seq = doc.find("seq");
    const auto kind = doc.find("kind");
    const auto payload = doc.find("payload");
    const auto time = doc.find("time");
    if (seq == doc.end() || !seq->is_number_unsigned() || kind == doc.end() || !kind->is_string() ||
        payload == doc.end() || !payload->is_object() || time == doc.end() || !time->is_number_integer())
        return std::nullopt;
    const auto parsed_kind = event_kind_from_string(kind->get<std::string>());
    if (!parsed_kind)
        return std::nullopt;
    return EventRecord{seq->get<std::uint64_t>(), *parsed_kind, *payload, time->get<std::int64_t>()};
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept
{
    return kEventNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kEventNames.size(); ++i)
        if (kEventNames[i] == s)
            return static_cast<EventKind>(i);
    return std::nullopt;
}

std::string encode_event_line(const EventRecord& r)
{
    const json doc{
        {"seq", r.seq},
        {"kind", std::string(to_string(r.kind))},
        {"payload", r.payload},
        {"time", r.time_ms},
    };
    return ledger::canonical_encoding(doc) + "\n";
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {}

void EventLog::append(const EventRecord& record)
{
    if (record.seq != records_.size())
        throw Error("LOG_CORRUPT", "event seq " + std::to_string(record.seq) + " out of order");
    if (path_)
        ledger::append_durably(*path_, encode_event_line(record));
    records_.push_back(record);
}

void EventLog::reset(std::vector<EventRecord> records)
{
    if (path_)
    {
        std::string data;
        for (const auto& r : records)
            data += encode_event_line(r);
        ledger::replace_durably(*path_, data);
    }
    records_ = std::move(records);
}

std::vector<EventRecord> EventLog::read(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return {};
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string data = buffer.str();

    std::vector<EventRecord> records;
    std::size_t pos = 0;
    while (pos < data.size())
    {
        const auto end = data.find('\n', pos);
        const bool terminated = end != std::string::npos;
        const std::string line = data.substr(pos, terminated ? end - pos : std::string::npos);
        pos = terminated ? end + 1 : data.size();

        const auto expected = records.size();
        auto record = decode_line(line);
        if (!record)
        {
            if (!terminated)
                break;
            throw Error("LOG_CORRUPT", "event " + std::to_string(expected) + " does not decode");
        }
        if (record->seq != expected)
            throw Error("LOG_CORRUPT", "event " + std::to_string(expected) + " is missing (found seq " +
                                           std::to_string(record->seq) + ")");
        records.push_back(std::move(*record));
    }
    return records;
}

}  // namespace marksim::server
