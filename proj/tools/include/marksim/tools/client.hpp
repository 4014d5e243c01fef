// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <marksim/server/api.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace marksim::tools
{
class Transport
{
public:
    virtual ~Transport() = default;
    virtual server::ApiResponse send(const server::ApiRequest& request) = 0;
};

/// Calls an in-process Api directly.
class LocalTransport final : public Transport
{
public:
    explicit LocalTransport(server::Api& api) : api_(api) {}
    server::ApiResponse send(const server::ApiRequest& request) override { return api_.handle(request); }

private:
    server::Api& api_;
};

/// Talks to `simctl serve` over HTTP. Throws Error{UNREACHABLE}.
class HttpTransport final : public Transport
{
public:
    explicit HttpTransport(const std::string& base_url);
    ~HttpTransport() override;
    server::ApiResponse send(const server::ApiRequest& request) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Typed wrapper over the HTTP/JSON API. Error responses are rethrown as
/// marksim::Error with the server's code and violations.
class SimClient
{
public:
    SimClient(Transport& transport, std::string admin_token);

    nlohmann::json create_simulation(const nlohmann::json& config);
    nlohmann::json status(const std::string& token);
    nlohmann::json register_team(const std::string& name);
    nlohmann::json submit_plan(nlohmann::json plan, const std::string& token);
    nlohmann::json finalize(std::optional<int> week = std::nullopt, std::optional<std::uint64_t> gas_price = std::nullopt);
    nlohmann::json report(int team_id, int week, const std::string& token);
    nlohmann::json purchase_market_report(int week, const std::string& token);
    nlohmann::json blocks(std::optional<std::uint64_t> from, std::optional<std::uint64_t> to, const std::string& token);
    nlohmann::json acknowledge(const std::string& block_hash, int team_id, const std::string& signature,
                               const std::string& token);
    std::string metrics_csv(const std::string& token);
    nlohmann::json standings(const std::string& token);

    [[nodiscard]] const std::string& admin_token() const noexcept { return admin_token_; }

private:
    server::ApiResponse call(const std::string& method, const std::string& path, const std::string& token,
                             const nlohmann::json* body = nullptr, std::map<std::string, std::string> query = {});
    nlohmann::json call_json(const std::string& method, const std::string& path, const std::string& token,
                             const nlohmann::json* body = nullptr, std::map<std::string, std::string> query = {});

    Transport& transport_;
    std::string admin_token_;
};

}  // namespace marksim::tools
