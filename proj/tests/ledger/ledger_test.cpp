// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/support.hpp"

#include <marksim/error.hpp>
#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/ledger.hpp>
#include <marksim/ledger/verify.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace marksim;
using namespace marksim::ledger;

namespace
{
Transaction golden_tx()
{
    Transaction tx;
    tx.sender.fill(0x11);
    tx.nonce = 0;
    tx.payload = "{}";
    tx.payload_digest = sha256("{}");
    tx.gas_used = 21'136;
    tx.gas_price = 20'000'000'000;
    tx.gas_limit = 6'721'975;
    tx.kind = TxKind::turn_report;
    tx.tx_hash = compute_tx_hash(tx);
    return tx;
}

std::string error_code(auto&& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    return "";
}

}  // namespace

TEST(Hashes, GoldenTransactionAndBlock)
{
    const auto tx = golden_tx();
    EXPECT_EQ(to_hex(tx.tx_hash), "4cbb7dff80245ada1ae81000236cc251b43dda1a8491d8b02d48e8ed5d3e1d9d");
    EXPECT_EQ(to_hex(compute_tx_list_hash({tx})), "a28462ea4d3da660e2765533d042bf48316778f9678cf099fb397aa9d0189e5e");

    Block block;
    block.transactions = {tx};
    block.tx_list_hash = compute_tx_list_hash(block.transactions);
    block.test = true;
    EXPECT_EQ(to_hex(compute_block_hash(block)), "d877db5d95de136404caf1fd77daffb1e5335894e45ca543eb85ed222d963a8e");
}

TEST(Hashes, TxListHashIsOrderSensitive)
{
    auto a = golden_tx();
    auto b = golden_tx();
    b.nonce = 1;
    b.tx_hash = compute_tx_hash(b);
    EXPECT_NE(compute_tx_list_hash({a, b}), compute_tx_list_hash({b, a}));
    EXPECT_EQ(compute_tx_list_hash({}), sha256(""));
}

TEST(Records, JsonRoundTrip)
{
    for (const auto& block : testing_support::build_chain(5))
    {
        const auto doc = nlohmann::json::parse(canonical_encoding(block_to_json(block)));
        EXPECT_EQ(block_from_json(doc), block);
    }
}

TEST(Records, DecodersAreStrict)
{
    const auto doc = tx_to_json(golden_tx());
    EXPECT_TRUE(tx_from_json(doc));
    for (const char* key : {"sender", "nonce", "payload", "kind", "value", "tx_hash"})
    {
        auto broken = doc;
        broken.erase(key);
        EXPECT_FALSE(tx_from_json(broken)) << key;
    }
    auto upper = doc;
    upper["payload_digest"] = "E" + upper["payload_digest"].get<std::string>().substr(1);
    EXPECT_FALSE(tx_from_json(upper));
    auto kind = doc;
    kind["kind"] = "mint";
    EXPECT_FALSE(tx_from_json(kind));
    auto negative = doc;
    negative["nonce"] = -1;
    EXPECT_FALSE(tx_from_json(negative));
}

TEST(Ledger, TenFundedMockAccountsAndACoordinator)
{
    const Ledger ledger;
    ASSERT_EQ(ledger.mock_accounts().size(), 10u);
    std::set<Address> addresses;
    for (const auto& a : ledger.mock_accounts())
    {
        EXPECT_EQ(a.balance, kInitialBalance);
        EXPECT_EQ(a.nonce, 0u);
        addresses.insert(a.address);
    }
    addresses.insert(ledger.coordinator().address);
    EXPECT_EQ(addresses.size(), 11u);
    EXPECT_EQ(ledger.total_wei(), Wei{11} * kInitialBalance);
    EXPECT_EQ(error_code([&] { (void)ledger.account(Address{}); }), "UNKNOWN_ACCOUNT");
}

TEST(Ledger, EmptyPayloadFee)
{
    Ledger ledger;
    const auto sender = ledger.mock_accounts()[0].address;
    const auto tx = ledger.build_transaction(sender, TxKind::turn_report, "");
    EXPECT_EQ(tx.gas_used, 21'000u);
    EXPECT_EQ(to_string(tx.fee()), "420000000000000");
    EXPECT_EQ(to_string(ledger.account(sender).balance), "99999580000000000000");
    EXPECT_EQ(ledger.account(sender).nonce, 1u);
    EXPECT_EQ(ledger.burned(), tx.fee());
}

TEST(Ledger, IdenticalPayloadsGetDistinctHashes)
{
    Ledger ledger;
    const auto sender = ledger.mock_accounts()[2].address;
    const auto a = ledger.build_transaction(sender, TxKind::turn_report, "{\"x\":1}");
    const auto b = ledger.build_transaction(sender, TxKind::turn_report, "{\"x\":1}");
    EXPECT_EQ(a.nonce + 1, b.nonce);
    EXPECT_NE(a.tx_hash, b.tx_hash);
}

TEST(Ledger, InsufficientBalance)
{
    GasSchedule pricey;
    pricey.gas_price = 4'000'000'000'000'000;
    Ledger ledger(pricey);
    const auto sender = ledger.mock_accounts()[0].address;
    EXPECT_EQ(error_code([&] { ledger.build_transaction(sender, TxKind::turn_report, ""); }), "");
    EXPECT_EQ(error_code([&] { ledger.build_transaction(sender, TxKind::turn_report, std::string(100, 'x')); }),
              "INSUFFICIENT_BALANCE");
    EXPECT_EQ(ledger.account(sender).nonce, 1u);
}

TEST(Ledger, OversizedPayloadIsRejected)
{
    Ledger ledger;
    const auto sender = ledger.mock_accounts()[0].address;
    EXPECT_EQ(error_code([&] { ledger.build_transaction(sender, TxKind::turn_report, std::string(98'544, 'x')); }),
              "GAS_LIMIT_EXCEEDED");
    EXPECT_EQ(ledger.account(sender).nonce, 0u);
    EXPECT_EQ(ledger.account(sender).balance, kInitialBalance);
}

TEST(Ledger, GenesisAndLinkage)
{
    Ledger ledger;
    const auto& c = ledger.coordinator().address;
    const auto genesis = ledger.append_block({ledger.build_transaction(c, TxKind::genesis_params, "{}")}, 0, false, 0);
    EXPECT_EQ(genesis.height, 0u);
    EXPECT_EQ(genesis.prev_hash, kZeroHash);
    for (int i = 1; i <= 4; ++i)
        ledger.append_block({ledger.build_transaction(c, TxKind::turn_report, "{}")}, i, false, 0);
    EXPECT_EQ(ledger.height(), 5u);
    EXPECT_EQ(ledger.blocks()[4].height, 4u);
    EXPECT_EQ(ledger.blocks()[4].prev_hash, ledger.blocks()[3].block_hash);
    EXPECT_EQ(ledger.find_block(ledger.blocks()[2].block_hash), &ledger.blocks()[2]);
    EXPECT_EQ(ledger.find_block(kZeroHash), nullptr);
    EXPECT_EQ(error_code([&] { ledger.append_block({}, 5, false, 0); }), "EMPTY_TX_LIST");
    EXPECT_FALSE(verify_chain(ledger.blocks()));
}

TEST(Ledger, DeterministicBlockHashes)
{
    EXPECT_EQ(testing_support::build_chain(8, 3), testing_support::build_chain(8, 3));
    EXPECT_NE(testing_support::build_chain(8, 3).back().block_hash,
              testing_support::build_chain(8, 4).back().block_hash);
}

TEST(Ledger, WeiIsConserved)
{
    Ledger ledger;
    const auto start = ledger.total_wei();
    std::mt19937_64 rng(1);
    for (int h = 0; h < 30; ++h)
    {
        std::vector<Transaction> txs;
        for (int i = 0; i < 3; ++i)
        {
            const auto& sender = ledger.mock_accounts()[rng() % kMockAccountCount].address;
            txs.push_back(ledger.build_transaction(sender, TxKind::turn_report, std::string(rng() % 500, 'a')));
        }
        ledger.append_block(std::move(txs), h, false, 0);
        ASSERT_EQ(ledger.total_wei(), start);
    }
    EXPECT_GT(ledger.burned(), 0);
}

TEST(Ledger, RebuildFromBlocks)
{
    const auto blocks = testing_support::build_chain(12);
    const auto rebuilt = Ledger::from_blocks(blocks);
    EXPECT_EQ(rebuilt.blocks(), blocks);
    Wei fees = 0;
    std::map<Address, std::uint64_t> nonces;
    for (const auto& b : blocks)
        for (const auto& tx : b.transactions)
        {
            fees += tx.fee();
            ++nonces[tx.sender];
        }
    EXPECT_EQ(rebuilt.burned(), fees);
    for (const auto& a : rebuilt.mock_accounts())
        EXPECT_EQ(a.nonce, nonces[a.address]);
    EXPECT_EQ(rebuilt.coordinator().nonce, nonces[rebuilt.coordinator().address]);
}

TEST(Ledger, AppendRefusesACorruptedRebuild)
{
    auto blocks = testing_support::build_chain(4);
    blocks[2].transactions[0].payload += " ";
    auto ledger = Ledger::from_blocks(blocks);
    const auto& c = ledger.coordinator().address;
    auto tx = ledger.build_transaction(c, TxKind::turn_report, "{}");
    EXPECT_EQ(error_code([&] { ledger.append_block({tx}, 4, false, 0); }), "CHAIN_CORRUPT");
}

TEST(Ledger, SavepointRollback)
{
    Ledger ledger;
    const auto& c = ledger.coordinator().address;
    ledger.append_block({ledger.build_transaction(c, TxKind::genesis_params, "{}")}, 0, false, 0);
    const auto point = ledger.save();
    const auto before = ledger.blocks();
    const auto sender = ledger.mock_accounts()[1].address;
    ledger.append_block({ledger.build_transaction(sender, TxKind::turn_report, "{}")}, 1, false, 0);
    ledger.rollback(point);
    EXPECT_EQ(ledger.blocks(), before);
    EXPECT_EQ(ledger.account(sender).nonce, 0u);
    EXPECT_EQ(ledger.account(sender).balance, kInitialBalance);
    EXPECT_EQ(ledger.burned(), before[0].transactions[0].fee());
    const auto again =
        ledger.append_block({ledger.build_transaction(sender, TxKind::turn_report, "{}")}, 1, false, 0);
    EXPECT_EQ(again.height, 1u);
}
