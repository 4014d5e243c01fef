// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/ledger/crypto.hpp>

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace marksim::ledger
{
namespace
{
void ensure_sodium()
{
    static const bool initialized = [] {
        if (sodium_init() < 0)
            throw std::runtime_error("libsodium failed to initialize");
        return true;
    }();
    (void)initialized;
}

int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

}  // namespace

Hash sha256(std::span<const std::uint8_t> data) noexcept
{
    Hash out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Hash sha256(std::string_view data) noexcept
{
    return sha256(as_bytes(data));
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const auto b : bytes)
    {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        return std::nullopt;
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_string(const Address& address)
{
    return "0x" + to_hex(address);
}

std::optional<Address> address_from_string(std::string_view s)
{
    if (!s.starts_with("0x"))
        return std::nullopt;
    return fixed_from_hex<20>(s.substr(2));
}

KeyPair::KeyPair(const Seed& seed) : seed_(seed)
{
    ensure_sodium();
    crypto_sign_seed_keypair(public_key_.data(), secret_key_.data(), seed_.data());
}

Signature KeyPair::sign(std::span<const std::uint8_t> message) const noexcept
{
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret_key_.data());
    return sig;
}

bool verify_signature(std::span<const std::uint8_t> message, const Signature& signature,
                      const PublicKey& public_key) noexcept
{
    ensure_sodium();
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(), public_key.data()) == 0;
}

Address address_of(const PublicKey& public_key) noexcept
{
    const auto digest = sha256(public_key);
    Address out{};
    std::copy(digest.end() - out.size(), digest.end(), out.begin());
    return out;
}

Seed random_seed()
{
    ensure_sodium();
    Seed seed{};
    randombytes_buf(seed.data(), seed.size());
    return seed;
}

}  // namespace marksim::ledger
