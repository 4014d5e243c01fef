// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/server/api.hpp>

#include <memory>
#include <string>

namespace marksim::server
{
/// Serves an Api over HTTP/1.1 on a background thread.
class HttpServer
{
public:
    explicit HttpServer(Api& api);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and starts serving. Port 0 picks a free port. Returns the bound
    /// port. Throws Error{IO_ERROR} when binding fails.
    int start(const std::string& host, int port);

    /// Serves on the calling thread until stop().
    void run(const std::string& host, int port);

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace marksim::server
