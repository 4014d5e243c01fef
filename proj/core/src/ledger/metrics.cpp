// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/ledger/metrics.hpp>

namespace marksim::ledger
{
std::vector<TxMetric> record_metrics(std::span<const Block> chain, const AckBook& acks, std::size_t n_teams,
                                     std::int64_t now_ms, std::int64_t timeout_ms)
{
    std::vector<TxMetric> out;
    for (const auto& block : chain)
    {
        const auto* entry = acks.find(block.block_hash);
        if (!entry)
            continue;
        const auto final_ms = acks.final_time(block.block_hash, n_teams, now_ms, timeout_ms);
        if (!final_ms)
            continue;
        for (const auto& tx : block.transactions)
        {
            out.push_back({tx.tx_hash, entry->committed_ms, *final_ms, *final_ms - entry->committed_ms, tx.gas_used,
                           tx.fee(), tx.sender});
        }
    }
    return out;
}

std::map<Address, Wei> fees_by_sender(std::span<const Block> chain)
{
    std::map<Address, Wei> out;
    for (const auto& block : chain)
        for (const auto& tx : block.transactions)
            out[tx.sender] += tx.fee();
    return out;
}

std::string metrics_csv(std::span<const TxMetric> metrics)
{
    std::string csv(kMetricsCsvHeader);
    csv += '\n';
    for (const auto& m : metrics)
    {
        csv += to_hex(m.tx_hash) + ',' + std::to_string(m.submit_ms) + ',' + std::to_string(m.final_ms) + ',' +
               std::to_string(m.latency_ms) + ',' + std::to_string(m.gas_used) + ',' + to_string(m.fee_wei) + ',' +
               to_string(m.sender) + '\n';
    }
    return csv;
}

}  // namespace marksim::ledger
