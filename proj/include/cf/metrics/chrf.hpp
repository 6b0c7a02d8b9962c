#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "cf/metrics/tokenize.hpp"

namespace cf::metrics {

inline constexpr std::size_t kChrfCharOrder = 6;
inline constexpr std::size_t kChrfWordOrder = 2;
inline constexpr double kChrfBeta = 2.0;

/// Per-order n-gram counts: character orders 1..6 first, then word orders 1..2.
struct ChrfStats {
  static constexpr std::size_t kOrders = kChrfCharOrder + kChrfWordOrder;
  std::array<std::size_t, kOrders> hyp{};
  std::array<std::size_t, kOrders> ref{};
  std::array<std::size_t, kOrders> match{};

  ChrfStats& operator+=(const ChrfStats& other);
};

/// Word tokens for the word n-gram part: whitespace split, then one leading or trailing
/// ASCII punctuation mark is detached from tokens longer than one character.
TokenSequence chrf_words(std::string_view text);

ChrfStats chrf_stats(std::string_view hyp, std::string_view ref);

/// F-beta (beta = 2) of precision and recall averaged over every order with non-zero
/// hypothesis and reference counts, on a 0-100 scale.
double chrf_from_stats(const ChrfStats& stats);

/// Sentence chrF++. Empty hypothesis scores 0; a reference without any non-space character
/// throws ValidationError.
double chrf_pp(std::string_view hyp, std::string_view ref);

/// Corpus chrF++ over pooled statistics.
double corpus_chrf_pp(std::span<const std::string> hyps, std::span<const std::string> refs);

}  // namespace cf::metrics
