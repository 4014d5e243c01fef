// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/crypto.hpp>
#include <marksim/ledger/gas.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace marksim::ledger
{
enum class TxKind
{
    genesis_params,
    turn_report,
    market_report_purchase,
    acknowledgment,
};

std::string_view to_string(TxKind kind) noexcept;
std::optional<TxKind> tx_kind_from_string(std::string_view s) noexcept;

struct Transaction
{
    Hash tx_hash{};
    Address sender{};
    std::uint64_t nonce = 0;
    std::string payload;  ///< canonical report bytes
    Hash payload_digest{};
    Wei value = 0;
    std::uint64_t gas_used = 0;
    std::uint64_t gas_price = 0;
    std::uint64_t gas_limit = 0;
    TxKind kind = TxKind::turn_report;

    [[nodiscard]] Wei fee() const noexcept { return ledger::fee(gas_used, gas_price); }

    bool operator==(const Transaction&) const = default;
};

struct Block
{
    std::uint64_t height = 0;
    Hash prev_hash{};
    Hash tx_list_hash{};
    std::int64_t timestamp_ms = 0;
    int week = 0;
    bool test = false;
    Hash block_hash{};
    std::vector<Transaction> transactions;

    bool operator==(const Block&) const = default;
};

/// Everything but tx_hash, the preimage of the transaction hash.
nlohmann::json tx_preimage_json(const Transaction& tx);
nlohmann::json tx_to_json(const Transaction& tx);
nlohmann::json block_header_json(const Block& block);
nlohmann::json block_to_json(const Block& block);

/// Strict decoders; std::nullopt on any missing field, wrong type or
/// non-canonical hex.
std::optional<Transaction> tx_from_json(const nlohmann::json& doc);
std::optional<Block> block_from_json(const nlohmann::json& doc);

Hash compute_tx_hash(const Transaction& tx);
/// SHA-256 over the concatenated 32-byte transaction hashes, in order.
Hash compute_tx_list_hash(const std::vector<Transaction>& txs);
Hash compute_block_hash(const Block& block);

}  // namespace marksim::ledger
