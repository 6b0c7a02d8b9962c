#include "cf/backends/endpoint.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "cf/common/error.hpp"

namespace cf::backends {

std::string_view to_string(EndpointKind kind) noexcept {
  switch (kind) {
    case EndpointKind::translate: return "translate";
    case EndpointKind::embed: return "embed";
    case EndpointKind::chat: return "chat";
  }
  return "?";
}

EndpointKind parse_endpoint_kind(std::string_view name) {
  if (name == "translate") return EndpointKind::translate;
  if (name == "embed") return EndpointKind::embed;
  if (name == "chat") return EndpointKind::chat;
  throw ValidationError("unknown endpoint kind '" + std::string(name) + "'");
}

std::string_view request_path(EndpointKind kind) noexcept {
  switch (kind) {
    case EndpointKind::translate: return "/translate";
    case EndpointKind::embed: return "/embed";
    case EndpointKind::chat: return "/generate";
  }
  return "/";
}

void validate(const BackendEndpoint& e) {
  const std::string where = "endpoint '" + e.name + "': ";
  if (e.name.empty()) throw ValidationError("endpoint without a name");
  if (e.base_url.empty()) throw ValidationError(where + "base_url is required");
  if (e.batch_size < 1) throw ValidationError(where + "batch_size must be >= 1");
  if (e.max_retries < 0) throw ValidationError(where + "max_retries must be >= 0");
  if (e.max_in_flight < 1) throw ValidationError(where + "max_in_flight must be >= 1");
  if (e.timeout.count() <= 0) throw ValidationError(where + "timeout must be positive");
  if (e.backoff_initial.count() < 0 || e.backoff_max.count() < 0)
    throw ValidationError(where + "backoff delays must be non-negative");
  if (!(e.backoff_multiplier >= 1.0)) throw ValidationError(where + "backoff_multiplier must be >= 1");
}

namespace {

double number(const Json& j, const char* key, double fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ValidationError(where + key + " must be a number");
  return it->get<double>();
}

long long integer(const Json& j, const char* key, long long fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(where + key + " must be an integer");
  return it->get<long long>();
}

std::chrono::milliseconds seconds(double s) {
  return std::chrono::milliseconds(static_cast<long long>(std::llround(s * 1000.0)));
}

}  // namespace

BackendEndpoint endpoint_from_json(const std::string& name, const Json& j) {
  const std::string where = "endpoint '" + name + "': ";
  if (!j.is_object()) throw ValidationError(where + "must be an object");
  static const char* kKeys[] = {"kind", "base_url", "timeout", "max_retries", "batch_size",
                                "max_in_flight", "backoff_initial", "backoff_multiplier", "backoff_max"};
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ValidationError(where + "unknown field '" + key + "'");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) throw ValidationError(where + "kind is required");
  if (!j.contains("base_url") || !j["base_url"].is_string()) throw ValidationError(where + "base_url is required");

  BackendEndpoint e;
  e.name = name;
  e.kind = parse_endpoint_kind(j["kind"].get<std::string>());
  e.base_url = j["base_url"].get<std::string>();
  e.timeout = seconds(number(j, "timeout", 30.0, where));
  const auto retries = integer(j, "max_retries", 3, where);
  const auto batch = integer(j, "batch_size", 16, where);
  const auto in_flight = integer(j, "max_in_flight", 1, where);
  if (retries < 0) throw ValidationError(where + "max_retries must be >= 0");
  if (batch < 1) throw ValidationError(where + "batch_size must be >= 1");
  if (in_flight < 1) throw ValidationError(where + "max_in_flight must be >= 1");
  e.max_retries = static_cast<int>(retries);
  e.batch_size = static_cast<std::size_t>(batch);
  e.max_in_flight = static_cast<std::size_t>(in_flight);
  e.backoff_initial = seconds(number(j, "backoff_initial", 0.2, where));
  e.backoff_multiplier = number(j, "backoff_multiplier", 2.0, where);
  e.backoff_max = seconds(number(j, "backoff_max", 10.0, where));
  validate(e);
  return e;
}

Json to_json(const BackendEndpoint& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind));
  j["base_url"] = e.base_url;
  j["timeout"] = static_cast<double>(e.timeout.count()) / 1000.0;
  j["max_retries"] = e.max_retries;
  j["batch_size"] = e.batch_size;
  j["max_in_flight"] = e.max_in_flight;
  j["backoff_initial"] = static_cast<double>(e.backoff_initial.count()) / 1000.0;
  j["backoff_multiplier"] = e.backoff_multiplier;
  j["backoff_max"] = static_cast<double>(e.backoff_max.count()) / 1000.0;
  return j;
}

std::string api_key_variable(std::string_view endpoint_name) {
  std::string var = "CF_";
  for (char c : endpoint_name) {
    const auto u = static_cast<unsigned char>(c);
    var.push_back(std::isalnum(u) ? static_cast<char>(std::toupper(u)) : '_');
  }
  var += "_KEY";
  return var;
}

std::optional<std::string> api_key(std::string_view endpoint_name) {
  const char* v = std::getenv(api_key_variable(endpoint_name).c_str());
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace cf::backends
