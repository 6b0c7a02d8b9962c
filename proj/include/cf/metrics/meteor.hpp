#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "cf/metrics/tokenize.hpp"

namespace cf::metrics {

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

/// (hypothesis index, reference index) pairs sorted by hypothesis index.
using Alignment = std::vector<std::pair<std::size_t, std::size_t>>;

/// Exact-match unigram alignment: the k-th occurrence of a word in the hypothesis is paired
/// with its k-th occurrence in the reference. Yields the maximum number of matches.
Alignment exact_alignment(const TokenSequence& hyp, const TokenSequence& ref);

/// Number of maximal runs of matches contiguous in both sequences.
std::size_t count_chunks(const Alignment& alignment);

/// METEOR restricted to exact matches (no stemming or synonyms), in [0, 1]:
/// Fmean * (1 - gamma * (chunks / matches)^beta), Fmean = P R / (alpha P + (1 - alpha) R).
double meteor(std::string_view hyp, std::string_view ref, const MeteorParams& params = {});

double meteor_tokens(const TokenSequence& hyp, const TokenSequence& ref, const MeteorParams& params = {});

}  // namespace cf::metrics
