// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/gas.hpp>

#include <algorithm>
#include <string>

namespace marksim::ledger
{
std::uint64_t data_gas(std::span<const std::uint8_t> payload, const GasSchedule& schedule) noexcept
{
    const auto zero_bytes = static_cast<std::uint64_t>(std::ranges::count(payload, std::uint8_t{0}));
    const auto nonzero_bytes = payload.size() - zero_bytes;
    return schedule.base_tx_gas + zero_bytes * schedule.gas_per_zero_byte +
           nonzero_bytes * schedule.gas_per_nonzero_byte;
}

std::uint64_t intrinsic_gas(std::span<const std::uint8_t> payload, const GasSchedule& schedule)
{
    const auto gas = data_gas(payload, schedule);
    if (gas > schedule.gas_limit)
        throw Error("GAS_LIMIT_EXCEEDED", "payload of " + std::to_string(payload.size()) +
                                              " bytes needs " + std::to_string(gas) +
                                              " gas, limit is " + std::to_string(schedule.gas_limit));
    return gas;
}

}  // namespace marksim::ledger

namespace marksim::ledger
{
std::string to_string(Wei amount)
{
    if (amount == 0)
        return "0";
    std::string digits;
    while (amount > 0)
    {
        digits.push_back(static_cast<char>('0' + static_cast<int>(amount % 10)));
        amount /= 10;
    }
    return {digits.rbegin(), digits.rend()};
}

std::optional<Wei> wei_from_string(std::string_view s) noexcept
{
    if (s.empty() || s.size() > 39 || (s.size() > 1 && s.front() == '0'))
        return std::nullopt;
    Wei value = 0;
    for (const char c : s)
    {
        if (c < '0' || c > '9')
            return std::nullopt;
        const Wei next = value * 10 + static_cast<unsigned>(c - '0');
        if (next / 10 != value)
            return std::nullopt;
        value = next;
    }
    return value;
}

}  // namespace marksim::ledger
