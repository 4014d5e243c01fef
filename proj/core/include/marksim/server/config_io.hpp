// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/engine/config.hpp>

#include <nlohmann/json.hpp>

namespace marksim::server
{
/// The configuration document. Keyword affinities and segment preferences
/// are stored as matrices keyed by keyword/segment id, then product id.
nlohmann::json config_to_json(const SimulationConfig& config);

/// Parses a configuration document. Top-level keys that are absent keep
/// their default_config() value. Throws Error{INVALID_CONFIG} carrying one
/// violation per offending field.
SimulationConfig config_from_json(const nlohmann::json& doc);

}  // namespace marksim::server
