#include "cf/common/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "cf/common/error.hpp"

namespace cf::jsonl {

namespace fs = std::filesystem;

void for_each_line(const fs::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(number, line);
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
}

std::vector<std::pair<std::size_t, Json>> read_objects(const fs::path& path) {
  std::vector<std::pair<std::size_t, Json>> out;
  for_each_line(path, [&](std::size_t number, std::string_view text) {
    Json value;
    try {
      value = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw SchemaError(path.string(), number, std::string("invalid JSON: ") + e.what());
    }
    if (!value.is_object()) throw SchemaError(path.string(), number, "expected a JSON object");
    out.emplace_back(number, std::move(value));
  });
  return out;
}

std::string dump(const Json& value) {
  return value.dump(-1, ' ', false, Json::error_handler_t::replace);
}

void write_text(const fs::path& path, std::string_view text) {
  const fs::path parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw IoError("parent directory does not exist: " + parent.string());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& line : lines) {
    text += line;
    text += '\n';
  }
  write_text(path, text);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json(const fs::path& path, const Json& value) {
  write_text(path, value.dump(2, ' ', false, Json::error_handler_t::replace) + "\n");
}

}  // namespace cf::jsonl
