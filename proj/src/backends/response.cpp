#include "cf/backends/response.hpp"

#include "cf/common/jsonl.hpp"
#include "cf/common/utf8.hpp"

namespace cf::backends {

std::string strip_code_fence(std::string_view raw) {
  std::string text = utf8::trim(raw);
  const auto open = text.find("```");
  if (open == std::string::npos) return text;
  auto body_start = text.find('\n', open);
  if (body_start == std::string::npos) return text;
  ++body_start;
  const auto close = text.find("```", body_start);
  return utf8::trim(std::string_view(text).substr(body_start, close == std::string::npos ? std::string::npos : close - body_start));
}

namespace {

[[noreturn]] void fail(FslResponseError::Kind kind, const std::string& what, std::string_view raw) {
  throw FslResponseError(kind, what, std::string(raw));
}

std::vector<std::string> parse_translations(std::string_view raw, const std::string& text, std::size_t expected_n,
                                            const FslParseOptions& options) {
  using K = FslResponseError::Kind;
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    fail(K::parse, "mt response: no JSON object found", raw);
  Json doc;
  try {
    doc = Json::parse(text.substr(open, close - open + 1));
  } catch (const Json::parse_error& e) {
    fail(K::parse, std::string("mt response: invalid JSON: ") + e.what(), raw);
  }
  const auto arr = doc.find("translations");
  if (arr == doc.end() || !arr->is_array()) fail(K::parse, "mt response: missing 'translations' array", raw);
  if (arr->size() != expected_n)
    fail(K::count, "mt response: expected " + std::to_string(expected_n) + " translations, got " +
                       std::to_string(arr->size()), raw);
  std::vector<std::string> out;
  for (const auto& item : *arr) {
    if (!item.is_object()) fail(K::parse, "mt response: translation entry is not an object", raw);
    const auto field = item.find(options.target_field);
    if (field == item.end() || !field->is_string())
      fail(K::parse, "mt response: entry without a '" + options.target_field + "' string", raw);
    out.push_back(field->get<std::string>());
  }
  return out;
}

std::vector<int> parse_labels(std::string_view raw, const std::string& text, FslTask task, std::size_t expected_n,
                              const FslParseOptions& options) {
  using K = FslResponseError::Kind;
  const auto open = text.find('[');
  const auto close = open == std::string::npos ? std::string::npos : text.find(']', open);
  if (close == std::string::npos) fail(K::parse, "no bracketed list in response", raw);
  Json list;
  try {
    list = Json::parse(text.substr(open, close - open + 1));
  } catch (const Json::parse_error& e) {
    fail(K::parse, std::string("unparseable list: ") + e.what(), raw);
  }
  std::vector<int> out;
  for (const auto& v : list) {
    if (!v.is_number_integer()) fail(K::parse, "list contains a non-integer value", raw);
    const auto x = v.get<long long>();
    if (x < -1'000'000 || x > 1'000'000) fail(K::value, "value out of range", raw);
    out.push_back(static_cast<int>(x));
  }
  if (out.size() != expected_n)
    fail(K::count, "expected " + std::to_string(expected_n) + " answers, got " + std::to_string(out.size()), raw);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int x = out[i];
    if (task == FslTask::sa && x != 0 && x != 1)
      fail(K::value, "sentiment label " + std::to_string(x) + " at position " + std::to_string(i) + " is not 0 or 1", raw);
    if (task == FslTask::mcqa) {
      if (x < 0) fail(K::value, "negative answer index at position " + std::to_string(i), raw);
      if (options.choice_counts) {
        if (options.choice_counts->size() != expected_n)
          throw ValidationError("choice_counts must have one entry per query");
        if (static_cast<std::size_t>(x) >= (*options.choice_counts)[i])
          fail(K::value, "answer " + std::to_string(x) + " at position " + std::to_string(i) + " exceeds " +
                             std::to_string((*options.choice_counts)[i]) + " choices", raw);
      }
    }
  }
  return out;
}

}  // namespace

FslAnswers parse_fsl_response(std::string_view raw, FslTask task, std::size_t expected_n,
                              const FslParseOptions& options) {
  if (expected_n < 1) throw ValidationError("parse_fsl_response: expected_n must be >= 1");
  const std::string text = strip_code_fence(raw);
  if (task == FslTask::mt) return parse_translations(raw, text, expected_n, options);
  return parse_labels(raw, text, task, expected_n, options);
}

}  // namespace cf::backends
