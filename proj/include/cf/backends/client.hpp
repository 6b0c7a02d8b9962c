#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cf/backends/audit.hpp"
#include "cf/backends/endpoint.hpp"
#include "cf/backends/transport.hpp"
#include "cf/common/jsonl.hpp"
#include "cf/metrics/cosine.hpp"

namespace cf::backends {

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Client for one endpoint: retries with exponential backoff, splits inputs into
/// batch_size chunks and keeps up to max_in_flight chunks in flight. Shareable across
/// threads; retry state lives on the stack of each request.
class BackendClient {
public:
  BackendClient(BackendEndpoint endpoint, std::shared_ptr<Transport> transport,
                std::shared_ptr<AuditLog> audit = nullptr, Sleeper sleeper = nullptr);

  const BackendEndpoint& endpoint() const noexcept { return endpoint_; }

  /// POSTs `body` to the endpoint's path and returns the decoded 2xx response body.
  /// [begin, end) names the inputs covered by the request for error reporting.
  /// Retries connection failures, 429 and 5xx; other statuses fail at once.
  Json call(const Json& body, std::size_t begin, std::size_t end) const;

  /// Invokes fn(begin, end) for every batch_size chunk of [0, n), concurrently up to
  /// max_in_flight. If chunks fail, the failure of the lowest-indexed chunk is rethrown.
  void for_each_chunk(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) const;

  /// Same with an explicit chunk size (used when one request covers one input).
  void for_each_chunk(std::size_t n, std::size_t chunk,
                      const std::function<void(std::size_t, std::size_t)>& fn) const;

private:
  BackendEndpoint endpoint_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<AuditLog> audit_;
  Sleeper sleeper_;
  std::vector<std::pair<std::string, std::string>> headers_;
};

/// Order-aligned translations. Throws ValidationError on empty input or a non-translate
/// endpoint, TransportError when retries are exhausted, ProtocolError on a short reply.
std::vector<std::string> translate_batch(const BackendClient& client, std::span<const std::string> texts,
                                         std::string_view src_lang, std::string_view tgt_lang);

/// One vector per text with a dimension uniform across the whole call.
std::vector<metrics::EmbeddingVector> embed_batch(const BackendClient& client,
                                                  std::span<const std::string> texts);

/// Single completion from a chat endpoint.
std::string generate(const BackendClient& client, std::string_view prompt);

/// Sends "<instruction>\n\n<text>" per input and returns the completions in input order.
std::vector<std::string> llm_rewrite(const BackendClient& client, std::span<const std::string> texts,
                                     std::string_view instruction);

/// Prompt sent by llm_rewrite for one text.
std::string rewrite_prompt(std::string_view instruction, std::string_view text);

}  // namespace cf::backends
