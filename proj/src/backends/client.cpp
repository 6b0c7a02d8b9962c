#include "cf/backends/client.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"

namespace cf::backends {

namespace {

std::string range(std::size_t begin, std::size_t end) {
  return "[" + std::to_string(begin) + ", " + std::to_string(end) + ")";
}

bool retryable(int status) { return status == 0 || status == 408 || status == 429 || status >= 500; }

void require_kind(const BackendClient& client, EndpointKind kind) {
  if (client.endpoint().kind != kind)
    throw ValidationError("endpoint '" + client.endpoint().name + "' is a " +
                          std::string(to_string(client.endpoint().kind)) + " endpoint, expected " +
                          std::string(to_string(kind)));
}

}  // namespace

BackendClient::BackendClient(BackendEndpoint endpoint, std::shared_ptr<Transport> transport,
                             std::shared_ptr<AuditLog> audit, Sleeper sleeper)
    : endpoint_(std::move(endpoint)),
      transport_(std::move(transport)),
      audit_(std::move(audit)),
      sleeper_(std::move(sleeper)) {
  validate(endpoint_);
  if (!transport_) throw ValidationError("endpoint '" + endpoint_.name + "' has no transport");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (auto key = api_key(endpoint_.name)) headers_.emplace_back("Authorization", "Bearer " + *key);
}

Json BackendClient::call(const Json& body, std::size_t begin, std::size_t end) const {
  HttpRequest request{std::string(request_path(endpoint_.kind)), jsonl::dump(body), headers_};
  auto delay = endpoint_.backoff_initial;
  for (int attempt = 0;; ++attempt) {
    const HttpResponse response = transport_->post(request);
    if (audit_)
      audit_->record(endpoint_.name, request.path, attempt, response.status, request.body, response.body,
                     response.error);

    if (response.status >= 200 && response.status < 300) {
      try {
        auto decoded = Json::parse(response.body);
        if (!decoded.is_object()) throw ProtocolError("response is not a JSON object");
        return decoded;
      } catch (const Json::parse_error& e) {
        throw ProtocolError("endpoint '" + endpoint_.name + "' batch " + range(begin, end) +
                            ": response is not valid JSON: " + e.what());
      }
    }

    const std::string what = response.status == 0 ? response.error : "HTTP " + std::to_string(response.status);
    if (!retryable(response.status))
      throw TransportError("endpoint '" + endpoint_.name + "' batch " + range(begin, end) + ": " + what, begin, end);
    if (attempt >= endpoint_.max_retries)
      throw TransportError("endpoint '" + endpoint_.name + "' batch " + range(begin, end) + ": " + what +
                               " (gave up after " + std::to_string(attempt + 1) + " attempts)",
                           begin, end);

    logger()->warn("endpoint '{}' batch {}: {}; retry {} in {} ms", endpoint_.name, range(begin, end), what,
                   attempt + 1, delay.count());
    sleeper_(delay);
    const auto next = static_cast<long long>(std::llround(static_cast<double>(delay.count()) * endpoint_.backoff_multiplier));
    delay = std::min(std::chrono::milliseconds(next), endpoint_.backoff_max);
  }
}

void BackendClient::for_each_chunk(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) const {
  for_each_chunk(n, endpoint_.batch_size, fn);
}

void BackendClient::for_each_chunk(std::size_t n, std::size_t chunk,
                                   const std::function<void(std::size_t, std::size_t)>& fn) const {
  if (n == 0) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  const std::size_t workers = std::min(endpoint_.max_in_flight, chunks);

  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t begin = c * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      try {
        fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
        failed.store(true);
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::string> translate_batch(const BackendClient& client, std::span<const std::string> texts,
                                         std::string_view src_lang, std::string_view tgt_lang) {
  require_kind(client, EndpointKind::translate);
  if (texts.empty()) throw ValidationError("translate_batch: no texts");

  std::vector<std::string> out(texts.size());
  client.for_each_chunk(texts.size(), [&](std::size_t begin, std::size_t end) {
    Json body;
    body["texts"] = Json::array();
    for (std::size_t i = begin; i < end; ++i) body["texts"].push_back(texts[i]);
    body["src_lang"] = src_lang;
    body["tgt_lang"] = tgt_lang;
    const Json reply = client.call(body, begin, end);

    const auto it = reply.find("translations");
    if (it == reply.end() || !it->is_array())
      throw ProtocolError("translate batch " + range(begin, end) + ": missing 'translations' array");
    if (it->size() != end - begin)
      throw ProtocolError("translate batch " + range(begin, end) + ": expected " + std::to_string(end - begin) +
                          " translations, got " + std::to_string(it->size()));
    for (std::size_t k = 0; k < it->size(); ++k) {
      const auto& t = (*it)[k];
      if (!t.is_string()) throw ProtocolError("translate batch " + range(begin, end) + ": non-string translation");
      out[begin + k] = t.get<std::string>();
    }
  });
  return out;
}

std::vector<metrics::EmbeddingVector> embed_batch(const BackendClient& client, std::span<const std::string> texts) {
  require_kind(client, EndpointKind::embed);
  if (texts.empty()) throw ValidationError("embed_batch: no texts");

  std::vector<metrics::EmbeddingVector> out(texts.size());
  std::vector<std::size_t> chunk_dims;
  std::mutex dims_mutex;
  client.for_each_chunk(texts.size(), [&](std::size_t begin, std::size_t end) {
    Json body;
    body["texts"] = Json::array();
    for (std::size_t i = begin; i < end; ++i) body["texts"].push_back(texts[i]);
    const Json reply = client.call(body, begin, end);

    const std::string where = "embed batch " + range(begin, end) + ": ";
    const auto vectors = reply.find("vectors");
    if (vectors == reply.end() || !vectors->is_array()) throw ProtocolError(where + "missing 'vectors' array");
    if (vectors->size() != end - begin)
      throw ProtocolError(where + "expected " + std::to_string(end - begin) + " vectors, got " +
                          std::to_string(vectors->size()));
    std::optional<std::size_t> dim;
    if (auto d = reply.find("dim"); d != reply.end()) {
      if (!d->is_number_unsigned() || d->get<std::size_t>() == 0) throw ProtocolError(where + "invalid 'dim'");
      dim = d->get<std::size_t>();
    }
    for (std::size_t k = 0; k < vectors->size(); ++k) {
      const auto& v = (*vectors)[k];
      if (!v.is_array()) throw ProtocolError(where + "vector is not an array");
      if (!dim) dim = v.size();
      if (v.size() != *dim)
        throw ProtocolError(where + "nonuniform dimensions (" + std::to_string(v.size()) + " vs " +
                            std::to_string(*dim) + ")");
      std::vector<double> values;
      values.reserve(v.size());
      for (const auto& x : v) {
        if (!x.is_number()) throw ProtocolError(where + "non-numeric (NaN or null) vector value");
        const double d = x.get<double>();
        if (!std::isfinite(d)) throw ProtocolError(where + "non-finite vector value");
        values.push_back(d);
      }
      out[begin + k] = metrics::EmbeddingVector(std::move(values));
    }
    std::lock_guard lock(dims_mutex);
    chunk_dims.push_back(*dim);
  });
  for (auto d : chunk_dims)
    if (d != chunk_dims.front())
      throw ProtocolError("embed: nonuniform dimensions across batches (" + std::to_string(d) + " vs " +
                          std::to_string(chunk_dims.front()) + ")");
  return out;
}

std::string generate(const BackendClient& client, std::string_view prompt) {
  require_kind(client, EndpointKind::chat);
  Json body;
  body["prompt"] = prompt;
  const Json reply = client.call(body, 0, 1);
  const auto it = reply.find("text");
  if (it == reply.end() || !it->is_string()) throw ProtocolError("chat: missing 'text' field");
  return it->get<std::string>();
}

std::string rewrite_prompt(std::string_view instruction, std::string_view text) {
  std::string prompt(instruction);
  prompt += "\n\n";
  prompt += text;
  return prompt;
}

std::vector<std::string> llm_rewrite(const BackendClient& client, std::span<const std::string> texts,
                                     std::string_view instruction) {
  require_kind(client, EndpointKind::chat);
  if (instruction.empty()) throw ValidationError("llm_rewrite: empty instruction");
  if (texts.empty()) throw ValidationError("llm_rewrite: no texts");

  std::vector<std::string> out(texts.size());
  client.for_each_chunk(texts.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Json body;
      body["prompt"] = rewrite_prompt(instruction, texts[i]);
      const Json reply = client.call(body, i, i + 1);
      const auto it = reply.find("text");
      if (it == reply.end() || !it->is_string())
        throw ProtocolError("rewrite item " + std::to_string(i) + ": missing 'text' field");
      out[i] = it->get<std::string>();
    }
  });
  return out;
}

}  // namespace cf::backends
