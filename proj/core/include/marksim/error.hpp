// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace marksim
{
/// One rule broken by a request. `field` is a JSON-pointer-ish locator such
/// as "allocations/3/split".
struct Violation
{
    std::string code;
    std::string field;
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Error carrying a stable machine-readable code (e.g. "BUDGET_EXCEEDED").
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& message, std::vector<Violation> violations = {});

    [[nodiscard]] const std::string& code() const noexcept { return code_; }
    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::string code_;
    std::vector<Violation> violations_;
};

}  // namespace marksim
