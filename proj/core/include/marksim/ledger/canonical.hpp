// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/crypto.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace marksim::ledger
{
/// Canonical JSON text: UTF-8, object keys in byte order, no whitespace,
/// integers verbatim and floating-point numbers in shortest round-trip form
/// (std::to_chars). Throws Error{NON_SERIALIZABLE} for NaN/Inf, invalid
/// UTF-8 or binary values.
std::string canonical_encoding(const nlohmann::json& doc);

/// SHA-256 of canonical_encoding(doc).
Hash canonical_digest(const nlohmann::json& doc);

}  // namespace marksim::ledger
