#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cf::metrics {

/// Ordered tokens; never contains an empty token.
using TokenSequence = std::vector<std::string>;

enum class TokenScheme {
  word,  // mteval-13a style: punctuation split from word characters, then whitespace split
  chr,   // one token per Unicode scalar value, whitespace dropped
};

TokenSequence tokenize(std::string_view text, TokenScheme scheme = TokenScheme::word);

/// The 13a normalisation step alone: returns the padded line before whitespace splitting.
std::string tokenize_13a_line(std::string_view text);

}  // namespace cf::metrics
