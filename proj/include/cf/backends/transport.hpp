#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cf/backends/endpoint.hpp"

namespace cf::backends {

struct HttpRequest {
  std::string path;
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

struct HttpResponse {
  int status = 0;  // 0: no HTTP response (connection refused, timeout, ...)
  std::string body;
  std::string error;
};

/// One POST round trip. Implementations must be safe to call from several threads.
class Transport {
public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

/// HTTP/1.1 transport for an endpoint's base_url.
class HttpTransport final : public Transport {
public:
  HttpTransport(std::string base_url, std::chrono::milliseconds timeout);
  HttpResponse post(const HttpRequest& request) override;

private:
  std::string base_url_;
  std::string path_prefix_;
  std::chrono::milliseconds timeout_;
};

using TransportFactory = std::function<std::shared_ptr<Transport>(const BackendEndpoint&)>;

TransportFactory http_transport_factory();

}  // namespace cf::backends
