#pragma once

#include <cstddef>
#include <string_view>

#include "cf/metrics/tokenize.hpp"

namespace cf::metrics {

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

/// ROUGE-L F1 over 13a word tokens, 0-100. Empty hypothesis scores 0; empty reference throws.
double rouge_l(std::string_view hyp, std::string_view ref);

}  // namespace cf::metrics
