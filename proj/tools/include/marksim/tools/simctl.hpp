// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace marksim::tools
{
inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitVerify = 3;

/// Entry point of the `simctl` operator tool.
int run_simctl(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace marksim::tools
