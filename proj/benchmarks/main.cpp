// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
