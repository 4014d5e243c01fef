// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/error.hpp>
#include <marksim/server/session.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace marksim::server
{
struct ApiRequest
{
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string authorization;  ///< raw Authorization header
    std::string body;
};

struct ApiResponse
{
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// HTTP status for an error code.
int status_for(const std::string& code) noexcept;

/// {"code", "message", "violations": [...]}
nlohmann::json error_json(const Error& error);

/// Transport-independent request dispatcher. The administrator authenticates
/// with `Bearer <admin token>`, teams with the token issued at registration.
/// Registration itself is open while the session is in setup.
class Api
{
public:
    /// `options` are used when POST /api/simulation creates a session.
    Api(std::string admin_token, SessionOptions options);

    /// Serves an already running (e.g. recovered) session.
    void attach(std::unique_ptr<Session> session);
    [[nodiscard]] std::shared_ptr<Session> session() const;

    ApiResponse handle(const ApiRequest& request);

private:
    struct Caller
    {
        bool admin = false;
        std::optional<int> team;
    };

    Caller authenticate(const ApiRequest& request, const std::shared_ptr<Session>& session) const;
    ApiResponse dispatch(const ApiRequest& request);

    std::string admin_token_;
    SessionOptions options_;
    mutable std::mutex mutex_;
    std::shared_ptr<Session> session_;
};

}  // namespace marksim::server
