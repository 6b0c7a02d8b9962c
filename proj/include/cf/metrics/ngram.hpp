#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace cf::metrics {

/// Multiset of n-grams of a fixed order. Keys are length-prefixed concatenations of the
/// member tokens, so distinct token tuples never collide.
using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t order);

/// Same for a sequence of scalar values (character n-grams).
NgramCounts count_ngrams(const std::u32string& chars, std::size_t order);

/// Sum over n-grams of min(hyp count, ref count).
std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref);

/// Number of n-grams of the given order in a sequence of `length` items.
constexpr std::size_t ngram_total(std::size_t length, std::size_t order) noexcept {
  return length >= order ? length - order + 1 : 0;
}

}  // namespace cf::metrics
