// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/gas.hpp>
#include <marksim/ledger/types.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace marksim::ledger
{
enum class ChainFailure
{
    decode,
    non_canonical,
    empty_tx_list,
    tx_hash_mismatch,
    payload_digest_mismatch,
    gas_mismatch,
    tx_list_hash_mismatch,
    block_hash_mismatch,
    linkage,
    height,
    nonce,
};

std::string_view to_string(ChainFailure reason) noexcept;

/// First failing position in a chain. `height` is the position in the
/// sequence, which is also the height the block should have carried.
struct ChainFault
{
    std::uint64_t height = 0;
    ChainFailure reason = ChainFailure::decode;
    std::string detail;
};

/// Recomputes every hash, the linkage, gas arithmetic and per-sender nonce
/// sequences. std::nullopt means the chain is intact.
std::optional<ChainFault> verify_chain(std::span<const Block> chain, const GasSchedule& schedule = {});

/// Same checks over stored lines, also rejecting lines that do not decode or
/// are not in canonical encoding.
std::optional<ChainFault> verify_chain_lines(std::span<const std::string> lines, const GasSchedule& schedule = {});

}  // namespace marksim::ledger
