#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "cf/common/jsonl.hpp"

namespace cf::backends {

enum class EndpointKind { translate, embed, chat };

std::string_view to_string(EndpointKind kind) noexcept;
EndpointKind parse_endpoint_kind(std::string_view name);

/// Request path for each kind: /translate, /embed, /generate.
std::string_view request_path(EndpointKind kind) noexcept;

struct BackendEndpoint {
  std::string name;
  std::string base_url;
  EndpointKind kind = EndpointKind::translate;
  std::chrono::milliseconds timeout{30'000};
  int max_retries = 3;
  std::size_t batch_size = 16;
  std::size_t max_in_flight = 1;
  std::chrono::milliseconds backoff_initial{200};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds backoff_max{10'000};
};

/// Throws ValidationError when batch_size < 1, max_retries < 0 and similar.
void validate(const BackendEndpoint& endpoint);

/// Parses one entry of the config "endpoints" object. `timeout` is given in seconds.
BackendEndpoint endpoint_from_json(const std::string& name, const Json& j);
Json to_json(const BackendEndpoint& endpoint);

/// Environment variable holding the key for an endpoint: CF_<NAME>_KEY, with the name
/// upper-cased and every non-alphanumeric character replaced by '_'.
std::string api_key_variable(std::string_view endpoint_name);
std::optional<std::string> api_key(std::string_view endpoint_name);

}  // namespace cf::backends
