#include "cf/common/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

namespace cf {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("corpusforge");
    l->set_pattern("[%H:%M:%S] [%^%l%$] %v");
    l->set_level(spdlog::level::info);
    return l;
  }();
  return instance;
}

void set_verbosity(spdlog::level::level_enum level) { logger()->set_level(level); }

}  // namespace cf
