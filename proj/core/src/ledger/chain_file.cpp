// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/error.hpp>
#include <marksim/ledger/canonical.hpp>
#include <marksim/ledger/chain_file.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

namespace marksim::ledger
{
namespace
{
class FileDescriptor
{
public:
    FileDescriptor(const std::filesystem::path& path, int flags)
      : fd_(::open(path.c_str(), flags | O_CLOEXEC, 0644))
    {
        if (fd_ < 0)
            fail("open", path);
    }
    FileDescriptor(const FileDescriptor&) = delete;
    FileDescriptor& operator=(const FileDescriptor&) = delete;
    ~FileDescriptor()
    {
        if (fd_ >= 0)
            ::close(fd_);
    }

    void write_all(const std::string& data, const std::filesystem::path& path) const
    {
        const char* p = data.data();
        std::size_t left = data.size();
        while (left > 0)
        {
            const auto n = ::write(fd_, p, left);
            if (n < 0)
            {
                if (errno == EINTR)
                    continue;
                fail("write", path);
            }
            p += n;
            left -= static_cast<std::size_t>(n);
        }
    }

    void sync(const std::filesystem::path& path) const
    {
        if (::fsync(fd_) != 0)
            fail("fsync", path);
    }

    [[noreturn]] static void fail(const char* what, const std::filesystem::path& path)
    {
        throw Error("IO_ERROR", std::string(what) + " " + path.string() + ": " + std::strerror(errno));
    }

private:
    int fd_;
};

}  // namespace

void append_durably(const std::filesystem::path& path, const std::string& data)
{
    FileDescriptor fd(path, O_WRONLY | O_CREAT | O_APPEND);
    fd.write_all(data, path);
    fd.sync(path);
}

void replace_durably(const std::filesystem::path& path, const std::string& data)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        FileDescriptor fd(tmp, O_WRONLY | O_CREAT | O_TRUNC);
        fd.write_all(data, tmp);
        fd.sync(tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error("IO_ERROR", "rename " + tmp.string() + ": " + ec.message());
}

std::string encode_block_line(const Block& block)
{
    return canonical_encoding(block_to_json(block));
}

ChainFile::ChainFile(std::filesystem::path path) : path_(std::move(path)) {}

void ChainFile::append(const Block& block) const
{
    append_durably(path_, encode_block_line(block) + "\n");
}

void ChainFile::rewrite(std::span<const Block> blocks) const
{
    std::string data;
    for (const auto& b : blocks)
        data += encode_block_line(b) + "\n";
    replace_durably(path_, data);
}

std::vector<std::string> ChainFile::read_lines() const
{
    std::vector<std::string> lines;
    std::ifstream in(path_, std::ios::binary);
    if (!in)
    {
        if (std::filesystem::exists(path_))
            throw Error("IO_ERROR", "cannot read " + path_.string());
        return lines;
    }
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::vector<Block> ChainFile::read_blocks() const
{
    std::vector<Block> blocks;
    const auto lines = read_lines();
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const auto doc = nlohmann::json::parse(lines[i], nullptr, false);
        auto block = doc.is_discarded() ? std::nullopt : block_from_json(doc);
        if (!block)
            throw Error("CHAIN_CORRUPT", "line " + std::to_string(i) + " of " + path_.string() + " is not a block");
        blocks.push_back(std::move(*block));
    }
    return blocks;
}

}  // namespace marksim::ledger
