#include "mocks.hpp"

#include "cf/common/utf8.hpp"

namespace cf::testing {

using backends::HttpRequest;
using backends::HttpResponse;

HttpResponse MockTransport::post(const HttpRequest& request) {
  ++calls_;
  {
    std::lock_guard lock(mutex_);
    bodies_.push_back(request.body);
  }
  try {
    const auto body = Json::parse(request.body);
    if (body.contains("texts")) {
      const auto n = body["texts"].size();
      auto seen = max_batch_.load();
      while (n > seen && !max_batch_.compare_exchange_weak(seen, n)) {
      }
    }
  } catch (const Json::exception&) {
  }
  return handler_(request);
}

std::vector<std::string> MockTransport::bodies() const {
  std::lock_guard lock(mutex_);
  return bodies_;
}

HttpResponse ForbiddenTransport::post(const HttpRequest&) {
  used_ = true;
  return {0, "", "network access is forbidden here"};
}

HttpResponse ok(const Json& body) { return {200, body.dump(), ""}; }

HttpResponse status(int code, std::string body) { return {code, std::move(body), ""}; }

Handler translator(std::function<std::string(const std::string&)> fn) {
  return [fn = std::move(fn)](const HttpRequest& r) {
    const auto body = Json::parse(r.body);
    Json out;
    out["translations"] = Json::array();
    for (const auto& t : body.at("texts")) out["translations"].push_back(fn(t.get<std::string>()));
    return ok(out);
  };
}

Handler echo_translator() {
  return translator([](const std::string& s) { return s; });
}

std::string reverse_words(const std::string& text) {
  auto words = utf8::split_whitespace(text);
  std::string out;
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += *it;
  }
  return out;
}

Handler reversing_translator() { return translator(reverse_words); }

Handler tagging_translator(std::string tag) {
  return translator([tag = std::move(tag)](const std::string& s) { return tag + s; });
}

Handler mapping_translator(std::map<std::string, std::string> table) {
  return translator([table = std::move(table)](const std::string& s) {
    auto it = table.find(s);
    return it == table.end() ? s : it->second;
  });
}

Handler table_embedder(std::map<std::string, std::vector<double>> table, std::vector<double> fallback) {
  return [table = std::move(table), fallback = std::move(fallback)](const HttpRequest& r) {
    const auto body = Json::parse(r.body);
    Json out;
    out["vectors"] = Json::array();
    for (const auto& t : body.at("texts")) {
      auto it = table.find(t.get<std::string>());
      out["vectors"].push_back(it == table.end() ? fallback : it->second);
    }
    out["dim"] = fallback.size();
    return ok(out);
  };
}

Handler constant_embedder(std::vector<double> vector) { return table_embedder({}, std::move(vector)); }

Handler identity_chat() {
  return [](const HttpRequest& r) {
    const auto prompt = Json::parse(r.body).at("prompt").get<std::string>();
    const auto pos = prompt.find("\n\n");
    return ok(Json{{"text", pos == std::string::npos ? prompt : prompt.substr(pos + 2)}});
  };
}

Handler fixed_chat(std::string reply) {
  return [reply = std::move(reply)](const HttpRequest&) { return ok(Json{{"text", reply}}); };
}

Handler failing_first(Handler inner, std::size_t failures, int code) {
  auto count = std::make_shared<std::atomic<std::size_t>>(0);
  return [inner = std::move(inner), failures, code, count](const HttpRequest& r) {
    if ((*count)++ < failures) return status(code);
    return inner(r);
  };
}

Handler failing_after(Handler inner, std::size_t successes, int code) {
  auto count = std::make_shared<std::atomic<std::size_t>>(0);
  return [inner = std::move(inner), successes, code, count](const HttpRequest& r) {
    if ((*count)++ >= successes) return status(code);
    return inner(r);
  };
}

backends::TransportFactory factory(std::map<std::string, std::shared_ptr<backends::Transport>> by_name) {
  return [by_name = std::move(by_name)](const backends::BackendEndpoint& e) -> std::shared_ptr<backends::Transport> {
    auto it = by_name.find(e.name);
    if (it == by_name.end()) return std::make_shared<ForbiddenTransport>();
    return it->second;
  };
}

backends::Sleeper no_sleep() {
  return [](std::chrono::milliseconds) {};
}

backends::BackendEndpoint endpoint(std::string name, backends::EndpointKind kind, std::size_t batch_size,
                                   int max_retries, std::size_t max_in_flight) {
  backends::BackendEndpoint e;
  e.name = std::move(name);
  e.base_url = "http://mock.invalid";
  e.kind = kind;
  e.batch_size = batch_size;
  e.max_retries = max_retries;
  e.max_in_flight = max_in_flight;
  return e;
}

}  // namespace cf::testing
