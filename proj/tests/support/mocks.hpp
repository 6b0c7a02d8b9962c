#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cf/backends/client.hpp"
#include "cf/backends/transport.hpp"
#include "cf/common/jsonl.hpp"

namespace cf::testing {

using Handler = std::function<backends::HttpResponse(const backends::HttpRequest&)>;

/// In-process transport driven by a handler. Counts calls and the largest batch seen.
class MockTransport final : public backends::Transport {
public:
  explicit MockTransport(Handler handler) : handler_(std::move(handler)) {}

  backends::HttpResponse post(const backends::HttpRequest& request) override;

  std::size_t calls() const noexcept { return calls_; }
  std::size_t max_batch() const noexcept { return max_batch_; }
  std::vector<std::string> bodies() const;

private:
  Handler handler_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> max_batch_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> bodies_;
};

/// Fails every request and remembers that it was used.
class ForbiddenTransport final : public backends::Transport {
public:
  backends::HttpResponse post(const backends::HttpRequest& request) override;
  bool used() const noexcept { return used_; }

private:
  std::atomic<bool> used_{false};
};

backends::HttpResponse ok(const Json& body);
backends::HttpResponse status(int code, std::string body = {});

/// texts -> translations with a per-text function.
Handler translator(std::function<std::string(const std::string&)> fn);
Handler echo_translator();
/// Reverses the order of space-separated words; its own inverse on single-spaced text.
Handler reversing_translator();
/// Prefixes every text with `tag`.
Handler tagging_translator(std::string tag);
/// Looks texts up in `table`, echoing anything not listed.
Handler mapping_translator(std::map<std::string, std::string> table);

Handler constant_embedder(std::vector<double> vector = {0.5, -1.0, 2.0, 0.25});
/// Vector per text from `table`; `fallback` for anything else.
Handler table_embedder(std::map<std::string, std::vector<double>> table,
                       std::vector<double> fallback = {1.0, 0.0, 0.0, 0.0});

/// Returns the text following the first blank line of the prompt (the rewrite payload).
Handler identity_chat();
Handler fixed_chat(std::string reply);

/// First `failures` calls answer `code`, later ones go to `inner`.
Handler failing_first(Handler inner, std::size_t failures, int code = 503);
/// First `successes` calls go to `inner`, later ones answer `code`.
Handler failing_after(Handler inner, std::size_t successes, int code = 503);

std::string reverse_words(const std::string& text);

/// Factory serving transports by endpoint name. Unknown names get a ForbiddenTransport.
backends::TransportFactory factory(std::map<std::string, std::shared_ptr<backends::Transport>> by_name);

backends::Sleeper no_sleep();

backends::BackendEndpoint endpoint(std::string name, backends::EndpointKind kind, std::size_t batch_size = 4,
                                   int max_retries = 3, std::size_t max_in_flight = 1);

}  // namespace cf::testing
