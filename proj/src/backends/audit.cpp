#include "cf/backends/audit.hpp"

#include "cf/common/error.hpp"
#include "cf/common/jsonl.hpp"

namespace cf::backends {

AuditLog::AuditLog(const std::filesystem::path& path) : out_(path, std::ios::app | std::ios::binary) {
  if (!out_) throw IoError("cannot open audit log " + path.string());
}

void AuditLog::record(std::string_view endpoint, std::string_view path, int attempt, int status,
                      std::string_view request_body, std::string_view response_body,
                      std::string_view error) {
  Json j;
  j["endpoint"] = endpoint;
  j["path"] = path;
  j["attempt"] = attempt;
  j["status"] = status;
  j["request"] = request_body;
  j["response"] = response_body;
  if (!error.empty()) j["error"] = error;
  const auto line = jsonl::dump(j);
  std::lock_guard lock(mutex_);
  out_ << line << '\n';
  out_.flush();
}

}  // namespace cf::backends
