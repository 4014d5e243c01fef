// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>

#include <utility>

namespace marksim
{
Error::Error(std::string code, const std::string& message, std::vector<Violation> violations)
  : std::runtime_error(code + ": " + message),
    code_(std::move(code)),
    violations_(std::move(violations))
{}

}  // namespace marksim
