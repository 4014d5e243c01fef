// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/ledger.hpp>
#include <marksim/ledger/verify.hpp>

#include <algorithm>

namespace marksim::ledger
{
namespace
{
Seed seed_from_label(const std::string& label) noexcept
{
    return sha256(label);
}

Account make_account(const Seed& seed)
{
    KeyPair keys(seed);
    const auto address = address_of(keys.public_key());
    return Account{address, std::move(keys), kInitialBalance, 0};
}

}  // namespace

Seed mock_account_seed(std::size_t index) noexcept
{
    return seed_from_label("marksim mock account " + std::to_string(index));
}

Seed coordinator_seed() noexcept
{
    return seed_from_label("marksim coordinator");
}

Ledger::Ledger(GasSchedule schedule) : schedule_(schedule)
{
    accounts_.reserve(kMockAccountCount + 1);
    for (std::size_t i = 0; i < kMockAccountCount; ++i)
        accounts_.push_back(make_account(mock_account_seed(i)));
    accounts_.push_back(make_account(coordinator_seed()));
}

Ledger Ledger::from_blocks(std::vector<Block> blocks, GasSchedule schedule)
{
    Ledger ledger(schedule);
    for (const auto& block : blocks)
    {
        for (const auto& tx : block.transactions)
        {
            const auto it = std::ranges::find(ledger.accounts_, tx.sender, &Account::address);
            if (it == ledger.accounts_.end())
                continue;
            const auto fee = tx.fee();
            it->balance = it->balance >= fee ? it->balance - fee : 0;
            ledger.burned_ += fee;
            it->nonce = std::max(it->nonce, tx.nonce + 1);
        }
    }
    ledger.blocks_ = std::move(blocks);
    return ledger;
}

const Account& Ledger::account(const Address& address) const
{
    const auto it = std::ranges::find(accounts_, address, &Account::address);
    if (it == accounts_.end())
        throw Error("UNKNOWN_ACCOUNT", "no account " + to_string(address));
    return *it;
}

Account& Ledger::account_mut(const Address& address)
{
    return const_cast<Account&>(std::as_const(*this).account(address));
}

Wei Ledger::total_wei() const noexcept
{
    Wei total = burned_;
    for (const auto& a : accounts_)
        total += a.balance;
    return total;
}

Transaction Ledger::build_transaction(const Address& sender, TxKind kind, std::string payload,
                                      std::optional<std::uint64_t> gas_price)
{
    auto& account = account_mut(sender);

    Transaction tx;
    tx.sender = sender;
    tx.kind = kind;
    tx.gas_price = gas_price.value_or(schedule_.gas_price);
    tx.gas_limit = schedule_.gas_limit;
    tx.gas_used = intrinsic_gas(as_bytes(payload), schedule_);
    const auto cost = tx.fee();
    if (account.balance < cost)
        throw Error("INSUFFICIENT_BALANCE", to_string(sender) + " holds " + to_string(account.balance) +
                                                " Wei, fee is " + to_string(cost) + " Wei");
    tx.payload = std::move(payload);
    tx.payload_digest = sha256(tx.payload);
    tx.nonce = account.nonce;
    tx.tx_hash = compute_tx_hash(tx);

    account.nonce += 1;
    account.balance -= cost;
    burned_ += cost;
    return tx;
}

const Block& Ledger::append_block(std::vector<Transaction> txs, int week, bool test, std::int64_t timestamp_ms)
{
    if (txs.empty())
        throw Error("EMPTY_TX_LIST", "a block needs at least one transaction");
    if (verified_ < blocks_.size())
    {
        if (const auto fault = verify_chain(blocks_, schedule_))
            throw Error("CHAIN_CORRUPT", "height " + std::to_string(fault->height) + ": " +
                                             std::string(to_string(fault->reason)));
        verified_ = blocks_.size();
    }

    Block block;
    block.height = blocks_.size();
    block.prev_hash = blocks_.empty() ? kZeroHash : blocks_.back().block_hash;
    block.transactions = std::move(txs);
    block.tx_list_hash = compute_tx_list_hash(block.transactions);
    block.timestamp_ms = timestamp_ms;
    block.week = week;
    block.test = test;
    block.block_hash = compute_block_hash(block);
    blocks_.push_back(std::move(block));
    verified_ = blocks_.size();
    return blocks_.back();
}

const Block* Ledger::find_block(const Hash& block_hash) const noexcept
{
    const auto it = std::ranges::find(blocks_, block_hash, &Block::block_hash);
    return it == blocks_.end() ? nullptr : &*it;
}

Ledger::Savepoint Ledger::save() const
{
    Savepoint point;
    for (const auto& a : accounts_)
        point.accounts.emplace_back(a.balance, a.nonce);
    point.burned = burned_;
    point.height = blocks_.size();
    return point;
}

void Ledger::rollback(const Savepoint& point)
{
    for (std::size_t i = 0; i < accounts_.size(); ++i)
        std::tie(accounts_[i].balance, accounts_[i].nonce) = point.accounts[i];
    burned_ = point.burned;
    blocks_.resize(std::min(blocks_.size(), point.height));
    verified_ = std::min(verified_, blocks_.size());
}

}  // namespace marksim::ledger
