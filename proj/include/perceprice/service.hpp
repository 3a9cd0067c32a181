#pragma once

// JSON-over-HTTP front end. `Api` is the pure request handler; `serve`
// wraps it in an HTTP/1.1 server bound to an address.

#include "perceprice/corpus.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace perceprice::service {

struct Response {
    int status = 200;
    std::string body;  // JSON, empty for 204
};

using Query = std::map<std::string, std::string, std::less<>>;

class Api {
public:
    explicit Api(corpus::Corpus corpus);

    /// Same inputs, same response. Never throws.
    Response handle(std::string_view method, std::string_view path, const Query& query,
                    std::string_view body) const;

    const corpus::Corpus& corpus() const noexcept { return corpus_; }

private:
    corpus::Corpus corpus_;
};

class RunningService {
public:
    virtual ~RunningService() = default;
    virtual int port() const noexcept = 0;
    /// Stops accepting connections and lets in-flight requests finish.
    virtual void stop() = 0;
    /// Blocks until the service stops.
    virtual void wait() = 0;
};

/// Port 0 picks an ephemeral port. Throws Error(BindFailure).
std::unique_ptr<RunningService> serve(const std::string& host, int port, corpus::Corpus corpus);

}  // namespace perceprice::service
