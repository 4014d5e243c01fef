// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

namespace marksim::ledger
{
/// Amounts of Ether in Wei. 100 ETH per account already exceeds 64 bits.
__extension__ using Wei = unsigned __int128;

inline constexpr Wei kWeiPerEther = 1'000'000'000'000'000'000ULL;

struct GasSchedule
{
    std::uint64_t gas_price = 20'000'000'000;  ///< Wei per gas
    std::uint64_t gas_limit = 6'721'975;
    std::uint64_t base_tx_gas = 21'000;
    std::uint64_t gas_per_zero_byte = 4;
    std::uint64_t gas_per_nonzero_byte = 68;

    bool operator==(const GasSchedule&) const = default;
};

/// Base cost plus per-byte data cost. Throws Error{GAS_LIMIT_EXCEEDED} when
/// the result exceeds the schedule's gas limit.
std::uint64_t intrinsic_gas(std::span<const std::uint8_t> payload, const GasSchedule& schedule = {});

/// Same computation without the limit check.
std::uint64_t data_gas(std::span<const std::uint8_t> payload, const GasSchedule& schedule = {}) noexcept;

constexpr Wei fee(std::uint64_t gas_used, std::uint64_t gas_price) noexcept
{
    return Wei{gas_used} * Wei{gas_price};
}

}  // namespace marksim::ledger

#include <optional>
#include <string>
#include <string_view>

namespace marksim::ledger
{
/// Decimal rendering of a Wei amount.
std::string to_string(Wei amount);
std::optional<Wei> wei_from_string(std::string_view s) noexcept;

}  // namespace marksim::ledger
