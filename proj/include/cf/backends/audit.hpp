#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string_view>

namespace cf::backends {

/// Append-only JSONL record of every raw backend exchange.
class AuditLog {
public:
  explicit AuditLog(const std::filesystem::path& path);

  void record(std::string_view endpoint, std::string_view path, int attempt, int status,
              std::string_view request_body, std::string_view response_body, std::string_view error);

private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace cf::backends
