#include "perceprice/error.hpp"
#include "perceprice/service.hpp"

#include <httplib.h>

#include <thread>

namespace perceprice::service {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";

class HttpService final : public RunningService {
public:
    HttpService(const std::string& host, int port, corpus::Corpus corpus) : api_(std::move(corpus))
    {
        server_.set_default_headers({
            {"Access-Control-Allow-Origin", "*"},
            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
            {"Access-Control-Allow-Headers", "Content-Type"},
        });
        // Reuse TIME_WAIT addresses, but never share a port with a live listener.
        server_.set_socket_options([](socket_t sock) {
            int yes = 1;
            ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
        });
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            Query query;
            for (const auto& [k, v] : req.params)
                query.emplace(k, v);
            const auto r = api_.handle(req.method, req.path, query, req.body);
            res.status = r.status;
            if (!r.body.empty())
                res.set_content(r.body, kJson);
        };
        server_.Get(".*", handler);
        server_.Post(".*", handler);
        server_.Put(".*", handler);
        server_.Patch(".*", handler);
        server_.Delete(".*", handler);
        server_.Options(".*", handler);

        port_ = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
        if (port_ <= 0)
            throw Error(ErrorCode::BindFailure, "cannot bind " + host + ":" + std::to_string(port));
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~HttpService() override
    {
        stop();
        wait();
    }

    int port() const noexcept override { return port_; }

    void stop() override { server_.stop(); }

    void wait() override
    {
        if (thread_.joinable())
            thread_.join();
    }

private:
    Api api_;
    httplib::Server server_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace

std::unique_ptr<RunningService> serve(const std::string& host, int port, corpus::Corpus corpus)
{
    return std::make_unique<HttpService>(host, port, std::move(corpus));
}

}  // namespace perceprice::service
