#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "cf/metrics/tokenize.hpp"

namespace cf::metrics {

inline constexpr std::size_t kBleuMaxOrder = 4;

/// Clipped n-gram matches and totals for orders 1..4, plus token lengths.
struct BleuStats {
  std::array<std::size_t, kBleuMaxOrder> correct{};
  std::array<std::size_t, kBleuMaxOrder> total{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats bleu_stats(const TokenSequence& hyp, const TokenSequence& ref);

/// BLEU on a 0-100 scale from (possibly pooled) statistics.
///
/// Precisions of orders whose total is zero are dropped (effective order). A zero match
/// count at order n >= 2 is smoothed exponentially: the k-th such order gets precision
/// 1 / (2^k * total). Without any unigram match the score is 0.
double bleu_from_stats(const BleuStats& stats);

/// Sentence-level BLEU with 13a tokenization. Throws ValidationError on an empty reference;
/// an empty hypothesis scores 0.
double sentence_bleu(std::string_view hyp, std::string_view ref);

/// Corpus BLEU: statistics are pooled over all pairs before precisions are taken.
double corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs);

}  // namespace cf::metrics
