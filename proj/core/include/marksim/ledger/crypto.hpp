// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace marksim::ledger
{
using Hash = std::array<std::uint8_t, 32>;
using Address = std::array<std::uint8_t, 20>;
using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;
using Seed = std::array<std::uint8_t, 32>;

inline constexpr Hash kZeroHash{};

Hash sha256(std::span<const std::uint8_t> data) noexcept;
Hash sha256(std::string_view data) noexcept;

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Lowercase hex, no prefix.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Strict decoding: lowercase digits only, even length.
std::optional<std::vector<std::uint8_t>> from_hex(std::string_view hex);

template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> fixed_from_hex(std::string_view hex)
{
    const auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != N)
        return std::nullopt;
    std::array<std::uint8_t, N> out{};
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

/// "0x" followed by 40 lowercase hex digits.
std::string to_string(const Address& address);
std::optional<Address> address_from_string(std::string_view s);

/// Ed25519 signing key derived deterministically from a 32-byte seed.
class KeyPair
{
public:
    explicit KeyPair(const Seed& seed);

    [[nodiscard]] const PublicKey& public_key() const noexcept { return public_key_; }
    [[nodiscard]] const Seed& seed() const noexcept { return seed_; }
    [[nodiscard]] Signature sign(std::span<const std::uint8_t> message) const noexcept;

private:
    Seed seed_{};
    PublicKey public_key_{};
    std::array<std::uint8_t, 64> secret_key_{};
};

bool verify_signature(std::span<const std::uint8_t> message, const Signature& signature,
                      const PublicKey& public_key) noexcept;

/// Last 20 bytes of SHA-256(public key).
Address address_of(const PublicKey& public_key) noexcept;

/// 32 bytes from the OS random source.
Seed random_seed();

}  // namespace marksim::ledger
