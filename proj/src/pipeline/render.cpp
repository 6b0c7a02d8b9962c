#include "cf/pipeline/render.hpp"

#include "cf/common/error.hpp"

namespace cf::pipeline {

std::string render_flat_text(const corpus::SAEntry& entry) { return entry.text; }

std::string render_flat_text(const corpus::MCQAEntry& entry) {
  std::string out = entry.question;
  for (const auto& c : entry.choices) {
    out += '\n';
    out += c;
  }
  return out;
}

std::vector<std::string> text_fields(const corpus::SAEntry& entry) { return {entry.text}; }

std::vector<std::string> text_fields(const corpus::MCQAEntry& entry) {
  std::vector<std::string> out;
  out.reserve(entry.choices.size() + 1);
  out.push_back(entry.question);
  out.insert(out.end(), entry.choices.begin(), entry.choices.end());
  return out;
}

corpus::SAEntry with_text_fields(const corpus::SAEntry& entry, std::vector<std::string> fields) {
  if (fields.size() != 1) throw DataError("SA entry '" + entry.id + "' expects exactly one text field");
  corpus::SAEntry out = entry;
  out.text = std::move(fields.front());
  return out;
}

corpus::MCQAEntry with_text_fields(const corpus::MCQAEntry& entry, std::vector<std::string> fields) {
  if (fields.size() != entry.choices.size() + 1)
    throw DataError("MCQA entry '" + entry.id + "' expects " + std::to_string(entry.choices.size() + 1) +
                    " text fields, got " + std::to_string(fields.size()));
  corpus::MCQAEntry out = entry;
  out.question = std::move(fields.front());
  out.choices.assign(std::make_move_iterator(fields.begin() + 1), std::make_move_iterator(fields.end()));
  return out;
}

std::vector<std::string> split_rendered(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto nl = text.find('\n', start);
    parts.push_back(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return parts;
}

}  // namespace cf::pipeline
