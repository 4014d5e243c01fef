// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/types.hpp>

#include <array>

namespace marksim::ledger
{
using nlohmann::json;

namespace
{
constexpr std::array<std::string_view, 4> kKindNames{"genesis_params", "turn_report", "market_report_purchase",
                                                     "acknowledgment"};

std::optional<std::uint64_t> get_u64(const json& doc, const char* key)
{
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_unsigned())
        return std::nullopt;
    return it->get<std::uint64_t>();
}

const std::string* get_string(const json& doc, const char* key)
{
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_string())
        return nullptr;
    return &it->get_ref<const std::string&>();
}

std::optional<Hash> get_hash(const json& doc, const char* key)
{
    const auto* s = get_string(doc, key);
    if (!s)
        return std::nullopt;
    return fixed_from_hex<32>(*s);
}

}  // namespace

std::string_view to_string(TxKind kind) noexcept
{
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<TxKind> tx_kind_from_string(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == s)
            return static_cast<TxKind>(i);
    return std::nullopt;
}

json tx_preimage_json(const Transaction& tx)
{
    return {
        {"sender", to_string(tx.sender)},
        {"nonce", tx.nonce},
        {"payload", to_hex(as_bytes(tx.payload))},
        {"payload_digest", to_hex(tx.payload_digest)},
        {"value", to_string(tx.value)},
        {"gas_used", tx.gas_used},
        {"gas_price", tx.gas_price},
        {"gas_limit", tx.gas_limit},
        {"kind", std::string(to_string(tx.kind))},
    };
}

json tx_to_json(const Transaction& tx)
{
    auto doc = tx_preimage_json(tx);
    doc["tx_hash"] = to_hex(tx.tx_hash);
    return doc;
}

json block_header_json(const Block& block)
{
    return {
        {"height", block.height},
        {"prev_hash", to_hex(block.prev_hash)},
        {"tx_list_hash", to_hex(block.tx_list_hash)},
        {"timestamp", block.timestamp_ms},
        {"week", block.week},
        {"test", block.test},
    };
}

json block_to_json(const Block& block)
{
    auto doc = block_header_json(block);
    doc["block_hash"] = to_hex(block.block_hash);
    json txs = json::array();
    for (const auto& tx : block.transactions)
        txs.push_back(tx_to_json(tx));
    doc["transactions"] = std::move(txs);
    return doc;
}

std::optional<Transaction> tx_from_json(const json& doc)
{
    if (!doc.is_object() || doc.size() != 10)
        return std::nullopt;
    Transaction tx;
    const auto tx_hash = get_hash(doc, "tx_hash");
    const auto digest = get_hash(doc, "payload_digest");
    const auto* sender = get_string(doc, "sender");
    const auto* payload = get_string(doc, "payload");
    const auto* value = get_string(doc, "value");
    const auto* kind = get_string(doc, "kind");
    const auto nonce = get_u64(doc, "nonce");
    const auto gas_used = get_u64(doc, "gas_used");
    const auto gas_price = get_u64(doc, "gas_price");
    const auto gas_limit = get_u64(doc, "gas_limit");
    if (!tx_hash || !digest || !sender || !payload || !value || !kind || !nonce || !gas_used || !gas_price ||
        !gas_limit)
        return std::nullopt;

    const auto sender_addr = address_from_string(*sender);
    const auto payload_bytes = from_hex(*payload);
    const auto wei = wei_from_string(*value);
    const auto tx_kind = tx_kind_from_string(*kind);
    if (!sender_addr || !payload_bytes || !wei || !tx_kind)
        return std::nullopt;

    tx.tx_hash = *tx_hash;
    tx.sender = *sender_addr;
    tx.nonce = *nonce;
    tx.payload.assign(payload_bytes->begin(), payload_bytes->end());
    tx.payload_digest = *digest;
    tx.value = *wei;
    tx.gas_used = *gas_used;
    tx.gas_price = *gas_price;
    tx.gas_limit = *gas_limit;
    tx.kind = *tx_kind;
    return tx;
}

std::optional<Block> block_from_json(const json& doc)
{
    if (!doc.is_object() || doc.size() != 8)
        return std::nullopt;
    Block b;
    const auto height = get_u64(doc, "height");
    const auto prev = get_hash(doc, "prev_hash");
    const auto list = get_hash(doc, "tx_list_hash");
    const auto hash = get_hash(doc, "block_hash");
    const auto ts = doc.find("timestamp");
    const auto week = doc.find("week");
    const auto test = doc.find("test");
    const auto txs = doc.find("transactions");
    if (!height || !prev || !list || !hash || ts == doc.end() || !ts->is_number_integer() || week == doc.end() ||
        !week->is_number_integer() || test == doc.end() || !test->is_boolean() || txs == doc.end() ||
        !txs->is_array())
        return std::nullopt;

    b.height = *height;
    b.prev_hash = *prev;
    b.tx_list_hash = *list;
    b.block_hash = *hash;
    b.timestamp_ms = ts->get<std::int64_t>();
    b.week = week->get<int>();
    b.test = test->get<bool>();
    for (const auto& t : *txs)
    {
        auto tx = tx_from_json(t);
        if (!tx)
            return std::nullopt;
        b.transactions.push_back(std::move(*tx));
    }
    return b;
}

Hash compute_tx_hash(const Transaction& tx)
{
    return canonical_digest(tx_preimage_json(tx));
}

Hash compute_tx_list_hash(const std::vector<Transaction>& txs)
{
    std::vector<std::uint8_t> concat;
    concat.reserve(txs.size() * 32);
    for (const auto& tx : txs)
        concat.insert(concat.end(), tx.tx_hash.begin(), tx.tx_hash.end());
    return sha256(concat);
}

Hash compute_block_hash(const Block& block)
{
    return canonical_digest(block_header_json(block));
}

}  // namespace marksim::ledger
