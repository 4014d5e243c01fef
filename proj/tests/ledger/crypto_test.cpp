// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/ledger/crypto.hpp>
#include <marksim/ledger/ledger.hpp>

#include <gtest/gtest.h>

using namespace marksim::ledger;

namespace
{
template <std::size_t N>
std::array<std::uint8_t, N> hex(std::string_view s)
{
    const auto v = fixed_from_hex<N>(s);
    if (!v)
        throw std::invalid_argument("bad hex in test vector");
    return *v;
}

}  // namespace

TEST(Sha256, KnownVectors)
{
    EXPECT_EQ(to_hex(sha256("")), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(to_hex(sha256("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256, ConcatenatedHashes)
{
    std::vector<std::uint8_t> both;
    const auto a = sha256("abc");
    const auto b = sha256("");
    both.insert(both.end(), a.begin(), a.end());
    both.insert(both.end(), b.begin(), b.end());
    EXPECT_EQ(to_hex(sha256(both)), "6f1290896ee81a0349174d19f4473d267a10289c40480861d5c42affffbd79f9");
}

TEST(Hex, DecodingIsStrict)
{
    EXPECT_EQ(from_hex(""), std::vector<std::uint8_t>{});
    EXPECT_EQ(from_hex("00ff10"), (std::vector<std::uint8_t>{0x00, 0xff, 0x10}));
    EXPECT_FALSE(from_hex("0"));
    EXPECT_FALSE(from_hex("FF"));
    EXPECT_FALSE(from_hex("0g"));
    EXPECT_FALSE(from_hex("0x00"));
    EXPECT_FALSE(fixed_from_hex<2>("00"));
}

TEST(Hex, AddressFormat)
{
    Address a{};
    a.fill(0x11);
    EXPECT_EQ(to_string(a), "0x1111111111111111111111111111111111111111");
    EXPECT_EQ(address_from_string(to_string(a)), a);
    EXPECT_FALSE(address_from_string("1111111111111111111111111111111111111111"));
    EXPECT_FALSE(address_from_string("0x11"));
    EXPECT_FALSE(address_from_string("0X1111111111111111111111111111111111111111"));
}

TEST(Ed25519, Rfc8032FirstVector)
{
    const KeyPair keys(hex<32>("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60"));
    EXPECT_EQ(to_hex(keys.public_key()), "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
    const auto sig = keys.sign({});
    EXPECT_EQ(to_hex(sig), "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e065224901555fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24655141438e7a100b");
    EXPECT_TRUE(verify_signature({}, sig, keys.public_key()));
}

TEST(Ed25519, Rfc8032SecondVector)
{
    const KeyPair keys(hex<32>("4ccd089b28ff96da9db6c346ec114e0f5b8a319f35aba624da8cf6ed4fb8a6fb"));
    EXPECT_EQ(to_hex(keys.public_key()), "3d4017c3e843895a92b70aa74d1b7ebc9c982ccf2ec4968cc0cd55f12af4660c");
    const std::uint8_t msg[] = {0x72};
    EXPECT_EQ(to_hex(keys.sign(msg)), "92a009a9f0d4cab8720e820b5f642540a2b27b5416503f8fb3762223ebdb69da085ac1e43e15996e458f3613d0f11d8c387b2eaeb4302aeeb00d291612bb0c00");
}

TEST(Ed25519, RejectsTamperedInputs)
{
    const KeyPair keys(random_seed());
    const KeyPair other(random_seed());
    const auto msg = as_bytes("block hash");
    auto sig = keys.sign(msg);
    EXPECT_TRUE(verify_signature(msg, sig, keys.public_key()));
    EXPECT_FALSE(verify_signature(as_bytes("block hasH"), sig, keys.public_key()));
    EXPECT_FALSE(verify_signature(msg, sig, other.public_key()));
    sig[10] ^= 0x01;
    EXPECT_FALSE(verify_signature(msg, sig, keys.public_key()));
}

TEST(Accounts, SeedsAndAddressesAreFrozen)
{
    EXPECT_EQ(to_hex(mock_account_seed(0)), "e6653a0b137a5d268089145deb42adab3feb1874fd40500fd18dd6677e11b1c5");
    EXPECT_EQ(to_hex(mock_account_seed(9)), "a97b450b1b96b5d44586ee427d33c05ec37f1881931fc3703dda61519e6b5862");
    EXPECT_EQ(to_hex(coordinator_seed()), "d28c06a7f40d0a767064b1b2a47f35ea3248bbf497cf1290fa99fbea9731a355");
    const KeyPair first(mock_account_seed(0));
    EXPECT_EQ(to_hex(first.public_key()), "f6af2ead7f6bc1856ae59ea01e8db42d5f1915ffeadcefce7521f6063e8b5cc4");
    EXPECT_EQ(to_string(address_of(first.public_key())), "0xbdf159ec66c3772c923784d4524b8842be01a56a");
    EXPECT_EQ(to_string(address_of(KeyPair(coordinator_seed()).public_key())),
              "0x8e0b57ac5969957fb00710e42bcc58ef7acc4ec8");
}

TEST(Accounts, RandomSeedsDiffer)
{
    EXPECT_NE(random_seed(), random_seed());
}
