#include "cf/metrics/ngram.hpp"

#include <algorithm>
#include <cstdint>

namespace cf::metrics {

namespace {

void append_length(std::string& key, std::size_t n) {
  const auto v = static_cast<std::uint32_t>(n);
  key.push_back(static_cast<char>(v & 0xFF));
  key.push_back(static_cast<char>((v >> 8) & 0xFF));
  key.push_back(static_cast<char>((v >> 16) & 0xFF));
  key.push_back(static_cast<char>((v >> 24) & 0xFF));
}

}  // namespace

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t order) {
  NgramCounts counts;
  if (order == 0 || tokens.size() < order) return counts;
  counts.reserve(tokens.size());
  std::string key;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    key.clear();
    for (std::size_t k = 0; k < order; ++k) {
      append_length(key, tokens[i + k].size());
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

NgramCounts count_ngrams(const std::u32string& chars, std::size_t order) {
  NgramCounts counts;
  if (order == 0 || chars.size() < order) return counts;
  counts.reserve(chars.size());
  for (std::size_t i = 0; i + order <= chars.size(); ++i) {
    std::string key(reinterpret_cast<const char*>(chars.data() + i), order * sizeof(char32_t));
    ++counts[key];
  }
  return counts;
}

std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref) {
  const NgramCounts& small = hyp.size() <= ref.size() ? hyp : ref;
  const NgramCounts& large = hyp.size() <= ref.size() ? ref : hyp;
  std::size_t total = 0;
  for (const auto& [key, count] : small) {
    auto it = large.find(key);
    if (it != large.end()) total += std::min(count, it->second);
  }
  return total;
}

}  // namespace cf::metrics
