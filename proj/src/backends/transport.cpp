#include "cf/backends/transport.hpp"

#include "httplib.h"

#include "cf/common/error.hpp"

namespace cf::backends {

namespace {

// Splits "http://host:port/prefix" into the scheme+authority and the path prefix.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ValidationError("base_url must include a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  std::string prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

}  // namespace

HttpTransport::HttpTransport(std::string base_url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  auto [authority, prefix] = split_url(base_url);
  base_url_ = std::move(authority);
  path_prefix_ = std::move(prefix);
}

HttpResponse HttpTransport::post(const HttpRequest& request) {
  // httplib::Client is not safe for concurrent use; one per request keeps this reentrant.
  httplib::Client client(base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);

  auto result = client.Post(path_prefix_ + request.path, headers, request.body, "application/json");
  HttpResponse response;
  if (!result) {
    response.error = httplib::to_string(result.error());
    return response;
  }
  response.status = result->status;
  response.body = result->body;
  return response;
}

TransportFactory http_transport_factory() {
  return [](const BackendEndpoint& e) -> std::shared_ptr<Transport> {
    return std::make_shared<HttpTransport>(e.base_url, e.timeout);
  };
}

}  // namespace cf::backends
