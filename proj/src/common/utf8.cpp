#include "cf/common/utf8.hpp"

namespace cf::utf8 {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
  char32_t cp;
  std::size_t length;
};

Decoded decode_one(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};

  std::size_t need = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    return {kReplacement, 1};
  }
  if (i + need >= s.size()) return {kReplacement, 1};
  for (std::size_t k = 1; k <= need; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {kReplacement, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {kReplacement, 1};
  return {cp, need + 1};
}

template <typename F>
void for_each_cp(std::string_view text, F&& f) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = decode_one(text, i);
    f(d.cp, i, d.length);
    i += d.length;
  }
}

}  // namespace

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for_each_cp(text, [&](char32_t cp, std::size_t, std::size_t) { out.push_back(cp); });
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out += encode(cp);
  return out;
}

bool is_space(char32_t cp) noexcept {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x1C: case 0x1D: case 0x1E: case 0x1F:
    case 0x20: case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool in_word = false;
  for_each_cp(text, [&](char32_t cp, std::size_t pos, std::size_t) {
    if (is_space(cp)) {
      if (in_word) out.emplace_back(text.substr(start, pos - start));
      in_word = false;
    } else if (!in_word) {
      start = pos;
      in_word = true;
    }
  });
  if (in_word) out.emplace_back(text.substr(start));
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for_each_cp(text, [&](char32_t cp, std::size_t, std::size_t) {
    const bool space = is_space(cp);
    if (!space && !in_word) ++n;
    in_word = !space;
  });
  return n;
}

std::size_t count_chars(std::string_view text) {
  std::size_t n = 0;
  for_each_cp(text, [&](char32_t, std::size_t, std::size_t) { ++n; });
  return n;
}

std::string trim(std::string_view text) {
  std::size_t first = text.size();
  std::size_t last = 0;
  for_each_cp(text, [&](char32_t cp, std::size_t pos, std::size_t len) {
    if (is_space(cp)) return;
    if (first == text.size()) first = pos;
    last = pos + len;
  });
  if (first == text.size()) return {};
  return std::string(text.substr(first, last - first));
}

}  // namespace cf::utf8
