#include "cf/metrics/chrf.hpp"

#include "cf/common/error.hpp"
#include "cf/common/utf8.hpp"
#include "cf/metrics/ngram.hpp"

namespace cf::metrics {

namespace {

bool is_ascii_punct(const std::string& token, std::size_t pos) {
  const char c = token[pos];
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

std::u32string strip_spaces(std::string_view text) {
  std::u32string out;
  for (char32_t cp : utf8::decode(text))
    if (!utf8::is_space(cp)) out.push_back(cp);
  return out;
}

}  // namespace

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  for (std::size_t i = 0; i < kOrders; ++i) {
    hyp[i] += other.hyp[i];
    ref[i] += other.ref[i];
    match[i] += other.match[i];
  }
  return *this;
}

TokenSequence chrf_words(std::string_view text) {
  TokenSequence out;
  for (auto& w : utf8::split_whitespace(text)) {
    if (utf8::count_chars(w) == 1) {
      out.push_back(std::move(w));
    } else if (is_ascii_punct(w, w.size() - 1)) {
      out.push_back(w.substr(0, w.size() - 1));
      out.push_back(w.substr(w.size() - 1));
    } else if (is_ascii_punct(w, 0)) {
      out.push_back(w.substr(0, 1));
      out.push_back(w.substr(1));
    } else {
      out.push_back(std::move(w));
    }
  }
  return out;
}

ChrfStats chrf_stats(std::string_view hyp, std::string_view ref) {
  ChrfStats s;
  const auto hyp_chars = strip_spaces(hyp);
  const auto ref_chars = strip_spaces(ref);
  for (std::size_t n = 1; n <= kChrfCharOrder; ++n) {
    const std::size_t i = n - 1;
    s.hyp[i] = ngram_total(hyp_chars.size(), n);
    s.ref[i] = ngram_total(ref_chars.size(), n);
    if (s.hyp[i] && s.ref[i]) s.match[i] = clipped_matches(count_ngrams(hyp_chars, n), count_ngrams(ref_chars, n));
  }
  const auto hyp_words = chrf_words(hyp);
  const auto ref_words = chrf_words(ref);
  for (std::size_t n = 1; n <= kChrfWordOrder; ++n) {
    const std::size_t i = kChrfCharOrder + n - 1;
    s.hyp[i] = ngram_total(hyp_words.size(), n);
    s.ref[i] = ngram_total(ref_words.size(), n);
    if (s.hyp[i] && s.ref[i]) s.match[i] = clipped_matches(count_ngrams(hyp_words, n), count_ngrams(ref_words, n));
  }
  return s;
}

double chrf_from_stats(const ChrfStats& s) {
  double precision = 0.0;
  double recall = 0.0;
  std::size_t effective_order = 0;
  for (std::size_t i = 0; i < ChrfStats::kOrders; ++i) {
    if (s.hyp[i] == 0 || s.ref[i] == 0) continue;
    precision += static_cast<double>(s.match[i]) / static_cast<double>(s.hyp[i]);
    recall += static_cast<double>(s.match[i]) / static_cast<double>(s.ref[i]);
    ++effective_order;
  }
  if (effective_order == 0) return 0.0;
  precision /= static_cast<double>(effective_order);
  recall /= static_cast<double>(effective_order);
  if (precision + recall == 0.0) return 0.0;
  const double b2 = kChrfBeta * kChrfBeta;
  return 100.0 * ((1.0 + b2) * precision * recall / (b2 * precision + recall));
}

double chrf_pp(std::string_view hyp, std::string_view ref) {
  if (strip_spaces(ref).empty()) throw ValidationError("chrF++ reference is empty");
  return chrf_from_stats(chrf_stats(hyp, ref));
}

double corpus_chrf_pp(std::span<const std::string> hyps, std::span<const std::string> refs) {
  if (hyps.size() != refs.size())
    throw ValidationError("corpus chrF++: " + std::to_string(hyps.size()) + " hypotheses vs " +
                          std::to_string(refs.size()) + " references");
  if (hyps.empty()) throw ValidationError("corpus chrF++ needs at least one pair");
  ChrfStats pooled;
  for (std::size_t i = 0; i < hyps.size(); ++i) pooled += chrf_stats(hyps[i], refs[i]);
  return chrf_from_stats(pooled);
}

}  // namespace cf::metrics
