// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/finality.hpp>

#include <algorithm>

namespace marksim::ledger
{
std::string_view to_string(Finality f) noexcept
{
    switch (f)
    {
    case Finality::pending:
        return "pending";
    case Finality::final_unanimous:
        return "final_unanimous";
    case Finality::final_quorum:
        return "final_quorum";
    case Finality::stalled:
        return "stalled";
    }
    return "pending";
}

FinalityStatus finality(std::size_t acks, std::size_t n_teams, bool timeout_elapsed) noexcept
{
    FinalityStatus s{Finality::pending, acks, n_teams};
    if (n_teams > 0 && acks >= n_teams)
        s.state = Finality::final_unanimous;
    else if (timeout_elapsed)
        s.state = acks >= quorum_size(n_teams) && n_teams > 0 ? Finality::final_quorum : Finality::stalled;
    return s;
}

Acknowledgment acknowledge(const Hash& block_hash, const KeyPair& team_keys)
{
    return {block_hash, address_of(team_keys.public_key()), team_keys.sign(block_hash)};
}

void AckBook::track(const Hash& block_hash, std::int64_t committed_ms)
{
    entries_.try_emplace(block_hash, Entry{committed_ms, {}, std::nullopt, 0});
}

bool AckBook::record(const Acknowledgment& ack, const PublicKey& team_key, std::int64_t at_ms, std::size_t n_teams,
                     std::int64_t timeout_ms)
{
    const auto it = entries_.find(ack.block_hash);
    if (it == entries_.end())
        throw Error("UNKNOWN_BLOCK", "no block " + to_hex(ack.block_hash));
    if (address_of(team_key) != ack.team || !verify_signature(ack.block_hash, ack.signature, team_key))
        throw Error("BAD_SIGNATURE", "signature does not verify for " + to_string(ack.team));

    auto& entry = it->second;
    if (std::ranges::any_of(entry.acks, [&](const auto& a) { return a.first.team == ack.team; }))
        return false;
    entry.acks.emplace_back(ack, at_ms);

    if (!entry.latched)
    {
        const bool elapsed = at_ms - entry.committed_ms >= timeout_ms;
        const auto s = finality(entry.acks.size(), n_teams, elapsed);
        if (s.is_final())
        {
            entry.latched = s.state;
            entry.final_ms = at_ms;
        }
    }
    return true;
}

FinalityStatus AckBook::status(const Hash& block_hash, std::size_t n_teams, std::int64_t now_ms,
                               std::int64_t timeout_ms) const
{
    const auto* entry = find(block_hash);
    if (!entry)
        throw Error("UNKNOWN_BLOCK", "no block " + to_hex(block_hash));
    if (entry->latched)
        return {*entry->latched, entry->acks.size(), n_teams};
    return finality(entry->acks.size(), n_teams, now_ms - entry->committed_ms >= timeout_ms);
}

std::optional<std::int64_t> AckBook::final_time(const Hash& block_hash, std::size_t n_teams, std::int64_t now_ms,
                                                std::int64_t timeout_ms) const
{
    const auto* entry = find(block_hash);
    if (!entry)
        return std::nullopt;
    if (entry->latched)
        return entry->final_ms;
    const auto s = status(block_hash, n_teams, now_ms, timeout_ms);
    if (!s.is_final())
        return std::nullopt;
    // Quorum reached without a latching ack: final at the later of the
    // timeout and the arrival of the quorum-completing ack.
    const auto q = quorum_size(n_teams);
    return std::max(entry->committed_ms + timeout_ms, entry->acks[q - 1].second);
}

const AckBook::Entry* AckBook::find(const Hash& block_hash) const noexcept
{
    const auto it = entries_.find(block_hash);
    return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace marksim::ledger
