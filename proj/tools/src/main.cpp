// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/tools/simctl.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return marksim::tools::run_simctl(argc, argv, std::cout, std::cerr);
}
