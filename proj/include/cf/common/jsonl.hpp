#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cf {

/// Key order is insertion order so that everything we write is byte-stable.
using Json = nlohmann::ordered_json;

namespace jsonl {

/// Calls `fn(line_number, text)` for every non-blank line. Line numbers are 1-based.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

/// Parses every non-blank line as a JSON object.
std::vector<std::pair<std::size_t, Json>> read_objects(const std::filesystem::path& path);

/// Compact, UTF-8 preserving serialization used for every JSONL record.
std::string dump(const Json& value);

/// Writes `lines` joined by '\n' (with trailing newline when non-empty) via a temporary
/// file and rename, so readers never observe a half-written file.
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& value);

}  // namespace jsonl
}  // namespace cf
