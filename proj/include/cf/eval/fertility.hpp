#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cf::eval {

/// Tokens per whitespace word: sum(token_counts) / sum(words(texts)).
/// Throws ValidationError on empty or misaligned input and when there are no words.
double tokenizer_fertility(std::span<const std::string> texts, std::span<const std::size_t> token_counts);

struct FertilitySample {
  std::vector<std::string> texts;
  std::vector<std::size_t> token_counts;
};

/// JSONL of {"text": ..., "tokens": n}.
FertilitySample load_fertility_sample(const std::filesystem::path& path);

}  // namespace cf::eval
