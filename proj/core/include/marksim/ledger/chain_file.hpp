// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/ledger/types.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace marksim::ledger
{
/// Line-delimited chain store: one canonical-encoded block per line.
class ChainFile
{
public:
    explicit ChainFile(std::filesystem::path path);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

    /// Appends one line and fsyncs before returning. Throws Error{IO_ERROR}.
    void append(const Block& block) const;

    /// Replaces the whole file (write to a temporary, fsync, rename).
    void rewrite(std::span<const Block> blocks) const;

    /// Raw lines without terminators; an absent file reads as empty.
    [[nodiscard]] std::vector<std::string> read_lines() const;

    /// Decoded blocks. Throws Error{CHAIN_CORRUPT} on an undecodable line.
    [[nodiscard]] std::vector<Block> read_blocks() const;

private:
    std::filesystem::path path_;
};

std::string encode_block_line(const Block& block);

/// Writes `data` to `path` with O_APPEND and fsyncs. Throws Error{IO_ERROR}.
void append_durably(const std::filesystem::path& path, const std::string& data);
/// Atomically replaces `path` with `data`.
void replace_durably(const std::filesystem::path& path, const std::string& data);

}  // namespace marksim::ledger
