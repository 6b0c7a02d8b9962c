#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cf::utf8 {

/// Decodes UTF-8 into scalar values. Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view text);

std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

/// Whitespace as understood by Python's str.split(): ASCII controls 0x09-0x0D, 0x1C-0x1F,
/// space, NEL, NBSP and the Unicode Zs/Zl/Zp characters.
bool is_space(char32_t cp) noexcept;

/// Splits on runs of Unicode whitespace; leading/trailing whitespace yields no empty pieces.
std::vector<std::string> split_whitespace(std::string_view text);

std::size_t count_words(std::string_view text);
std::size_t count_chars(std::string_view text);

/// Strips leading and trailing Unicode whitespace.
std::string trim(std::string_view text);

}  // namespace cf::utf8
