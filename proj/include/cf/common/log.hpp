#pragma once

#include <memory>

#include <spdlog/spdlog.h>

namespace cf {

/// Shared stderr logger. stdout is reserved for machine-readable results.
std::shared_ptr<spdlog::logger> logger();

void set_verbosity(spdlog::level::level_enum level);

}  // namespace cf
