// marksim: turn-based marketing simulation with a hash-chained report ledger
// Copyright 2026 The marksim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <marksim/server/http_server.hpp>

#include <httplib.h>

#include <thread>

namespace marksim::server
{
struct HttpServer::Impl
{
    explicit Impl(Api& a) : api(a)
    {
        auto forward = [this](const httplib::Request& in, httplib::Response& out) {
            ApiRequest req;
            req.method = in.method;
            req.path = in.path;
            for (const auto& [key, value] : in.params)
                req.query.emplace(key, value);
            req.authorization = in.get_header_value("Authorization");
            req.body = in.body;
            const auto res = api.handle(req);
            out.status = res.status;
            out.set_content(res.body, res.content_type);
        };
        server.Get(".*", forward);
        server.Post(".*", forward);
        server.Put(".*", forward);
        server.Delete(".*", forward);
    }

    Api& api;
    httplib::Server server;
    std::thread thread;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) {}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::start(const std::string& host, int port)
{
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : impl_->server.bind_to_port(host, port) ? port : -1;
    if (bound < 0)
        throw Error("IO_ERROR", "cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::run(const std::string& host, int port)
{
    if (!impl_->server.listen(host, port))
        throw Error("IO_ERROR", "cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop()
{
    impl_->server.stop();
    if (impl_->thread.joinable())
        impl_->thread.join();
}

}  // namespace marksim::server
