// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/support.hpp"

#include <marksim/ledger/ledger.hpp>
#include <marksim/ledger/metrics.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace marksim::ledger;

namespace
{
constexpr std::int64_t kTimeout = 30'000;

}  // namespace

TEST(Metrics, SingleTransactionLatency)
{
    Ledger ledger;
    const KeyPair team(mock_account_seed(0));
    const auto& block = ledger.append_block(
        {ledger.build_transaction(ledger.mock_accounts()[0].address, TxKind::turn_report, "{}")}, 0, false, 1000);
    AckBook book;
    book.track(block.block_hash, 1000);
    book.record(acknowledge(block.block_hash, team), team.public_key(), 1040, 1, kTimeout);
    const auto metrics = record_metrics(ledger.blocks(), book, 1, 2000, kTimeout);
    ASSERT_EQ(metrics.size(), 1u);
    EXPECT_EQ(metrics[0].latency_ms, 40);
    EXPECT_EQ(metrics[0].submit_ms, 1000);
    EXPECT_EQ(metrics[0].final_ms, 1040);
    EXPECT_EQ(metrics[0].gas_used, 21'136u);
    EXPECT_EQ(metrics[0].sender, ledger.mock_accounts()[0].address);
}

TEST(Metrics, EmptyChain)
{
    const AckBook book;
    EXPECT_TRUE(record_metrics({}, book, 10, 0, kTimeout).empty());
    EXPECT_TRUE(fees_by_sender({}).empty());
    EXPECT_EQ(metrics_csv({}), std::string(kMetricsCsvHeader) + "\n");
}

TEST(Metrics, PendingBlocksAreLeftOut)
{
    const auto chain = testing_support::build_chain(3);
    AckBook book;
    for (const auto& b : chain)
        book.track(b.block_hash, 0);
    const KeyPair a(mock_account_seed(0));
    book.record(acknowledge(chain[1].block_hash, a), a.public_key(), 5, 2, kTimeout);
    EXPECT_TRUE(record_metrics(chain, book, 2, 10, kTimeout).empty());
    const KeyPair b(mock_account_seed(1));
    book.record(acknowledge(chain[1].block_hash, b), b.public_key(), 7, 2, kTimeout);
    const auto metrics = record_metrics(chain, book, 2, 10, kTimeout);
    EXPECT_EQ(metrics.size(), chain[1].transactions.size());
}

TEST(Metrics, CycleFeeForEightEmptyReports)
{
    Ledger ledger;
    const auto sender = ledger.mock_accounts()[3].address;
    for (int week = 0; week < 8; ++week)
        ledger.append_block({ledger.build_transaction(sender, TxKind::turn_report, "")}, week, false, 0);
    const auto fees = fees_by_sender(ledger.blocks());
    ASSERT_EQ(fees.size(), 1u);
    EXPECT_EQ(fees.at(sender), Wei{8} * Wei{420'000'000'000'000});
    EXPECT_EQ(to_string(fees.at(sender)), "3360000000000000");
}

TEST(Metrics, CsvParses)
{
    const auto chain = testing_support::build_chain(4);
    AckBook book;
    const KeyPair team(mock_account_seed(0));
    for (std::size_t i = 0; i < chain.size(); ++i)
    {
        book.track(chain[i].block_hash, static_cast<std::int64_t>(100 * i));
        book.record(acknowledge(chain[i].block_hash, team), team.public_key(), static_cast<std::int64_t>(100 * i + 7), 1,
                    kTimeout);
    }
    const auto metrics = record_metrics(chain, book, 1, 1000, kTimeout);
    const auto csv = metrics_csv(metrics);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kMetricsCsvHeader);
    std::size_t rows = 0;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            cells.push_back(cell);
        ASSERT_EQ(cells.size(), 7u) << line;
        EXPECT_EQ(cells[0].size(), 64u);
        EXPECT_GE(std::stoll(cells[3]), 0);
        EXPECT_EQ(std::stoll(cells[3]), 7);
        EXPECT_EQ(cells[6].substr(0, 2), "0x");
        EXPECT_TRUE(wei_from_string(cells[5]));
        ++rows;
    }
    EXPECT_EQ(rows, metrics.size());
    EXPECT_GT(rows, 4u);
}
