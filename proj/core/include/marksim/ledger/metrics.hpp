// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/finality.hpp>
#include <marksim/ledger/types.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace marksim::ledger
{
struct TxMetric
{
    Hash tx_hash{};
    std::int64_t submit_ms = 0;
    std::int64_t final_ms = 0;
    std::int64_t latency_ms = 0;
    std::uint64_t gas_used = 0;
    Wei fee_wei = 0;
    Address sender{};

    bool operator==(const TxMetric&) const = default;
};

inline constexpr std::string_view kMetricsCsvHeader = "tx_hash,submit_ms,final_ms,latency_ms,gas_used,fee_wei,sender";

/// One row per transaction in a final block; transactions of blocks that
/// are not final at `now_ms` are left out.
std::vector<TxMetric> record_metrics(std::span<const Block> chain, const AckBook& acks, std::size_t n_teams,
                                     std::int64_t now_ms, std::int64_t timeout_ms);

/// Cumulative fees per sender over the whole chain.
std::map<Address, Wei> fees_by_sender(std::span<const Block> chain);

std::string metrics_csv(std::span<const TxMetric> metrics);

}  // namespace marksim::ledger
