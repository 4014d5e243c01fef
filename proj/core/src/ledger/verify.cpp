// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/verify.hpp>

#include <map>

namespace marksim::ledger
{
std::string_view to_string(ChainFailure reason) noexcept
{
    switch (reason)
    {
    case ChainFailure::decode:
        return "DECODE";
    case ChainFailure::non_canonical:
        return "NON_CANONICAL";
    case ChainFailure::empty_tx_list:
        return "EMPTY_TX_LIST";
    case ChainFailure::tx_hash_mismatch:
        return "TX_HASH_MISMATCH";
    case ChainFailure::payload_digest_mismatch:
        return "PAYLOAD_DIGEST_MISMATCH";
    case ChainFailure::gas_mismatch:
        return "GAS_MISMATCH";
    case ChainFailure::tx_list_hash_mismatch:
        return "TX_LIST_HASH_MISMATCH";
    case ChainFailure::block_hash_mismatch:
        return "BLOCK_HASH_MISMATCH";
    case ChainFailure::linkage:
        return "LINKAGE";
    case ChainFailure::height:
        return "HEIGHT";
    case ChainFailure::nonce:
        return "NONCE";
    }
    return "UNKNOWN";
}

namespace
{
class ChainChecker
{
public:
    explicit ChainChecker(const GasSchedule& schedule) : schedule_(schedule) {}

    std::optional<ChainFault> check(std::uint64_t position, const Block& block)
    {
        auto fault = [position](ChainFailure reason, std::string detail) {
            return ChainFault{position, reason, std::move(detail)};
        };

        if (block.transactions.empty())
            return fault(ChainFailure::empty_tx_list, "block has no transactions");

        for (std::size_t i = 0; i < block.transactions.size(); ++i)
        {
            const auto& tx = block.transactions[i];
            const auto where = "tx " + std::to_string(i);
            if (compute_tx_hash(tx) != tx.tx_hash)
                return fault(ChainFailure::tx_hash_mismatch, where);
            if (sha256(tx.payload) != tx.payload_digest)
                return fault(ChainFailure::payload_digest_mismatch, where);
            if (tx.gas_used != data_gas(as_bytes(tx.payload), schedule_) || tx.gas_used > tx.gas_limit ||
                tx.gas_limit > schedule_.gas_limit || tx.value != 0)
                return fault(ChainFailure::gas_mismatch, where);
        }

        if (compute_tx_list_hash(block.transactions) != block.tx_list_hash)
            return fault(ChainFailure::tx_list_hash_mismatch, "");
        if (compute_block_hash(block) != block.block_hash)
            return fault(ChainFailure::block_hash_mismatch, "");
        if (block.prev_hash != prev_hash_)
            return fault(ChainFailure::linkage, "prev_hash does not match the preceding block");
        if (block.height != position)
            return fault(ChainFailure::height, "stored height " + std::to_string(block.height));

        for (const auto& tx : block.transactions)
        {
            auto& expected = nonces_[tx.sender];
            if (tx.nonce != expected)
                return fault(ChainFailure::nonce, to_string(tx.sender) + " sent nonce " + std::to_string(tx.nonce) +
                                                      ", expected " + std::to_string(expected));
            ++expected;
        }

        prev_hash_ = block.block_hash;
        return std::nullopt;
    }

private:
    const GasSchedule& schedule_;
    Hash prev_hash_ = kZeroHash;
    std::map<Address, std::uint64_t> nonces_;
};

}  // namespace

std::optional<ChainFault> verify_chain(std::span<const Block> chain, const GasSchedule& schedule)
{
    ChainChecker checker(schedule);
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (auto f = checker.check(i, chain[i]))
            return f;
    return std::nullopt;
}

std::optional<ChainFault> verify_chain_lines(std::span<const std::string> lines, const GasSchedule& schedule)
{
    ChainChecker checker(schedule);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const auto doc = nlohmann::json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded())
            return ChainFault{i, ChainFailure::decode, "line is not valid JSON"};
        std::string canonical;
        try
        {
            canonical = canonical_encoding(doc);
        }
        catch (const std::exception&)
        {
            return ChainFault{i, ChainFailure::decode, "line is not serializable"};
        }
        if (canonical != lines[i])
            return ChainFault{i, ChainFailure::non_canonical, "line differs from its canonical encoding"};
        const auto block = block_from_json(doc);
        if (!block)
            return ChainFault{i, ChainFailure::decode, "line is not a block record"};
        if (auto f = checker.check(i, *block))
            return f;
    }
    return std::nullopt;
}

}  // namespace marksim::ledger
