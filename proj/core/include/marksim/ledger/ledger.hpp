// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/crypto.hpp>
#include <marksim/ledger/gas.hpp>
#include <marksim/ledger/types.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace marksim::ledger
{
struct Account
{
    Address address{};
    KeyPair keys;
    Wei balance = 0;
    std::uint64_t nonce = 0;  ///< transactions sent so far
};

inline constexpr std::size_t kMockAccountCount = 10;
inline constexpr Wei kInitialBalance = Wei{100} * kWeiPerEther;

/// Seed of mock account `index` (0-based); the coordinator uses its own seed.
Seed mock_account_seed(std::size_t index) noexcept;
Seed coordinator_seed() noexcept;

/// Append-only, hash-chained ledger with ten funded mock accounts plus a
/// coordinator account that signs genesis and market-state transactions.
/// Fees are burned into a sink. Not thread-safe: callers serialize writes.
class Ledger
{
public:
    explicit Ledger(GasSchedule schedule = {});

    /// Rebuilds balances and nonces by replaying the fees in `blocks`. The
    /// blocks are not verified here; append_block() verifies before writing.
    static Ledger from_blocks(std::vector<Block> blocks, GasSchedule schedule = {});

    [[nodiscard]] const GasSchedule& schedule() const noexcept { return schedule_; }
    [[nodiscard]] std::span<const Account> mock_accounts() const noexcept { return {accounts_.data(), kMockAccountCount}; }
    [[nodiscard]] const Account& coordinator() const noexcept { return accounts_.back(); }
    /// Throws Error{UNKNOWN_ACCOUNT}.
    [[nodiscard]] const Account& account(const Address& address) const;
    [[nodiscard]] Wei burned() const noexcept { return burned_; }
    /// Balances of every account plus burned fees.
    [[nodiscard]] Wei total_wei() const noexcept;

    /// Signs a transaction from `sender`, consumes its nonce and debits the
    /// fee. Throws Error{GAS_LIMIT_EXCEEDED}, Error{INSUFFICIENT_BALANCE}.
    Transaction build_transaction(const Address& sender, TxKind kind, std::string payload,
                                  std::optional<std::uint64_t> gas_price = std::nullopt);

    /// Seals `txs` into the next block. Throws Error{EMPTY_TX_LIST} or
    /// Error{CHAIN_CORRUPT} when the existing chain fails verification.
    const Block& append_block(std::vector<Transaction> txs, int week, bool test, std::int64_t timestamp_ms);

    [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::size_t height() const noexcept { return blocks_.size(); }
    [[nodiscard]] const Block* find_block(const Hash& block_hash) const noexcept;

    /// Cheap restore point covering balances, nonces and chain length.
    struct Savepoint
    {
        std::vector<std::pair<Wei, std::uint64_t>> accounts;
        Wei burned = 0;
        std::size_t height = 0;
    };
    [[nodiscard]] Savepoint save() const;
    void rollback(const Savepoint& point);

private:
    Account& account_mut(const Address& address);

    GasSchedule schedule_;
    std::vector<Account> accounts_;  ///< mock accounts, then the coordinator
    Wei burned_ = 0;
    std::vector<Block> blocks_;
    std::size_t verified_ = 0;  ///< blocks_[0, verified_) passed verification
};

}  // namespace marksim::ledger
