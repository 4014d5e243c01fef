// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/crypto.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace marksim::ledger
{
enum class Finality
{
    pending,
    final_unanimous,
    final_quorum,
    stalled,
};

std::string_view to_string(Finality f) noexcept;

struct FinalityStatus
{
    Finality state = Finality::pending;
    std::size_t ack_count = 0;
    std::size_t required = 0;

    [[nodiscard]] bool is_final() const noexcept
    {
        return state == Finality::final_unanimous || state == Finality::final_quorum;
    }
    bool operator==(const FinalityStatus&) const = default;
};

/// ceil(2n/3)
constexpr std::size_t quorum_size(std::size_t n) noexcept
{
    return (2 * n + 2) / 3;
}

/// Unanimous once every team acked; after the timeout, quorum when at least
/// ceil(2n/3) acked and stalled otherwise.
FinalityStatus finality(std::size_t acks, std::size_t n_teams, bool timeout_elapsed) noexcept;

struct Acknowledgment
{
    Hash block_hash{};
    Address team{};
    Signature signature{};

    bool operator==(const Acknowledgment&) const = default;
};

/// A team's signature over a block hash.
Acknowledgment acknowledge(const Hash& block_hash, const KeyPair& team_keys);

/// Acknowledgments per block plus the latched finality of each block.
/// Not thread-safe; the session serializes acks before evaluating finality.
class AckBook
{
public:
    struct Entry
    {
        std::int64_t committed_ms = 0;
        std::vector<std::pair<Acknowledgment, std::int64_t>> acks;  ///< arrival order
        std::optional<Finality> latched;
        std::int64_t final_ms = 0;
    };

    /// Starts collecting acks for a freshly committed block.
    void track(const Hash& block_hash, std::int64_t committed_ms);

    /// Records a verified ack. Returns false for a duplicate (idempotent).
    /// Throws Error{UNKNOWN_BLOCK} or Error{BAD_SIGNATURE}.
    bool record(const Acknowledgment& ack, const PublicKey& team_key, std::int64_t at_ms, std::size_t n_teams,
                std::int64_t timeout_ms);

    [[nodiscard]] FinalityStatus status(const Hash& block_hash, std::size_t n_teams, std::int64_t now_ms,
                                        std::int64_t timeout_ms) const;

    /// Time the block became final, if it is final at `now_ms`.
    [[nodiscard]] std::optional<std::int64_t> final_time(const Hash& block_hash, std::size_t n_teams,
                                                         std::int64_t now_ms, std::int64_t timeout_ms) const;

    [[nodiscard]] const Entry* find(const Hash& block_hash) const noexcept;
    [[nodiscard]] const std::map<Hash, Entry>& entries() const noexcept { return entries_; }

private:
    std::map<Hash, Entry> entries_;
};

}  // namespace marksim::ledger
