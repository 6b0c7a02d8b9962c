#include "cf/eval/fertility.hpp"

#include "cf/common/error.hpp"
#include "cf/common/jsonl.hpp"
#include "cf/common/utf8.hpp"

namespace cf::eval {

double tokenizer_fertility(std::span<const std::string> texts, std::span<const std::size_t> token_counts) {
  if (texts.empty()) throw ValidationError("fertility needs at least one text");
  if (texts.size() != token_counts.size())
    throw ValidationError("fertility: " + std::to_string(texts.size()) + " texts but " +
                          std::to_string(token_counts.size()) + " token counts");
  std::size_t words = 0;
  std::size_t tokens = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    words += utf8::count_words(texts[i]);
    tokens += token_counts[i];
  }
  if (words == 0) throw ValidationError("fertility: the texts contain no words");
  return static_cast<double>(tokens) / static_cast<double>(words);
}

FertilitySample load_fertility_sample(const std::filesystem::path& path) {
  FertilitySample s;
  for (const auto& [line, j] : jsonl::read_objects(path)) {
    if (!j.contains("text") || !j["text"].is_string()) throw SchemaError(path.string(), line, "missing string field 'text'");
    if (!j.contains("tokens") || !j["tokens"].is_number_unsigned())
      throw SchemaError(path.string(), line, "missing non-negative integer field 'tokens'");
    s.texts.push_back(j["text"].get<std::string>());
    s.token_counts.push_back(j["tokens"].get<std::size_t>());
  }
  return s;
}

}  // namespace cf::eval
