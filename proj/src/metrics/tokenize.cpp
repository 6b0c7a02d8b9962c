#include "cf/metrics/tokenize.hpp"

#include "cf/common/utf8.hpp"

namespace cf::metrics {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [{-~] [[-`] [ -&] [(-+] [:-@] and '/'
bool is_13a_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '{' && u <= '~') || (u >= '[' && u <= '`') || (u >= ' ' && u <= '&') ||
         (u >= '(' && u <= '+') || (u >= ':' && u <= '@') || u == '/';
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Left-to-right, non-overlapping substitution of a two-character pattern, matching the
// scanning behaviour of a regex substitution for a fixed-width pattern.
template <typename First, typename Second, typename Emit>
std::string substitute_pairs(const std::string& s, First first, Second second, Emit emit) {
  std::string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && first(s[i]) && second(s[i + 1])) {
      emit(out, s[i], s[i + 1]);
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::string tokenize_13a_line(std::string_view text) {
  std::string line(text);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }

  std::string padded;
  padded.reserve(line.size() * 2 + 2);
  padded.push_back(' ');
  for (char c : line) {
    if (is_13a_punct(c)) {
      padded.push_back(' ');
      padded.push_back(c);
      padded.push_back(' ');
    } else {
      padded.push_back(c);
    }
  }
  padded.push_back(' ');

  auto is_period_comma = [](char c) { return c == '.' || c == ','; };
  auto not_digit = [](char c) { return !is_digit(c); };

  // period and comma unless preceded by a digit
  padded = substitute_pairs(padded, not_digit, is_period_comma, [](std::string& o, char a, char b) {
    o.push_back(a);
    o.push_back(' ');
    o.push_back(b);
    o.push_back(' ');
  });
  // period and comma unless followed by a digit
  padded = substitute_pairs(padded, is_period_comma, not_digit, [](std::string& o, char a, char b) {
    o.push_back(' ');
    o.push_back(a);
    o.push_back(' ');
    o.push_back(b);
  });
  // dash preceded by a digit
  padded = substitute_pairs(padded, is_digit, [](char c) { return c == '-'; },
                            [](std::string& o, char a, char b) {
                              o.push_back(a);
                              o.push_back(' ');
                              o.push_back(b);
                              o.push_back(' ');
                            });
  return padded;
}

TokenSequence tokenize(std::string_view text, TokenScheme scheme) {
  if (scheme == TokenScheme::word) return utf8::split_whitespace(tokenize_13a_line(text));

  TokenSequence out;
  for (char32_t cp : utf8::decode(text)) {
    if (!utf8::is_space(cp)) out.push_back(utf8::encode(cp));
  }
  return out;
}

}  // namespace cf::metrics
