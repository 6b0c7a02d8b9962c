#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cf/backends/client.hpp"
#include "cf/backends/transport.hpp"

namespace cf::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kBackend = 2,
  kData = 3,
};

struct CliEnv {
  backends::TransportFactory transports;  // null: HTTP
  backends::Sleeper sleeper;              // null: real sleeping
  std::ostream* out = nullptr;            // null: std::cout
  std::ostream* err = nullptr;            // null: std::cerr
};

/// `args` includes the program name.
int run_cli(const std::vector<std::string>& args, const CliEnv& env = {});

}  // namespace cf::cli
