#pragma once

// Brute-force reference scorers. They count n-grams by direct comparison of windows and
// share no code with the library. Inputs must be ASCII text whose 13a tokenization is a
// plain whitespace split: words of letters and stand-alone punctuation, single spaces.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace cf::oracle {

inline std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <typename Seq>
bool same_window(const Seq& a, std::size_t i, const Seq& b, std::size_t j, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    if (!(a[i + k] == b[j + k])) return false;
  return true;
}

template <typename Seq>
std::size_t occurrences(const Seq& seq, const Seq& pattern_src, std::size_t at, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t j = 0; j + n <= seq.size(); ++j)
    if (same_window(seq, j, pattern_src, at, n)) ++c;
  return c;
}

/// Sum over distinct hypothesis n-grams of min(count in hyp, count in ref).
template <typename Seq>
std::size_t clipped(const Seq& hyp, const Seq& ref, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
    bool first = true;
    for (std::size_t p = 0; p < i && first; ++p)
      if (same_window(hyp, p, hyp, i, n)) first = false;
    if (!first) continue;
    const auto h = occurrences(hyp, hyp, i, n);
    const auto r = occurrences(ref, hyp, i, n);
    total += h < r ? h : r;
  }
  return total;
}

inline std::size_t windows(std::size_t len, std::size_t n) { return len >= n ? len - n + 1 : 0; }

/// Sentence BLEU: effective order, exponential smoothing, zero without unigram matches.
inline double bleu(const std::string& hyp_text, const std::string& ref_text) {
  const auto hyp = words(hyp_text);
  const auto ref = words(ref_text);
  if (hyp.empty()) return 0.0;
  if (clipped(hyp, ref, 1) == 0) return 0.0;
  double log_sum = 0.0;
  double smooth = 1.0;
  std::size_t order = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto total = windows(hyp.size(), n);
    if (total == 0) break;
    order = n;
    const auto m = clipped(hyp, ref, n);
    double p;
    if (m == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(total));
    } else {
      p = static_cast<double>(m) / static_cast<double>(total);
    }
    log_sum += std::log(p);
  }
  const double bp = hyp.size() < ref.size()
                        ? std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(hyp.size()))
                        : 1.0;
  return 100.0 * bp * std::exp(log_sum / static_cast<double>(order));
}

/// chrF++ (character orders 1-6 without spaces, word orders 1-2, beta 2) with precision and
/// recall averaged over the orders both sides can fill.
inline double chrf_pp(const std::string& hyp_text, const std::string& ref_text) {
  std::string hc;
  std::string rc;
  for (char c : hyp_text)
    if (c != ' ') hc.push_back(c);
  for (char c : ref_text)
    if (c != ' ') rc.push_back(c);
  const auto hw = words(hyp_text);
  const auto rw = words(ref_text);

  double p = 0.0;
  double r = 0.0;
  std::size_t orders = 0;
  auto add = [&](std::size_t m, std::size_t h, std::size_t rr) {
    if (h == 0 || rr == 0) return;
    p += static_cast<double>(m) / static_cast<double>(h);
    r += static_cast<double>(m) / static_cast<double>(rr);
    ++orders;
  };
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto h = windows(hc.size(), n);
    const auto rr = windows(rc.size(), n);
    add(h && rr ? clipped(hc, rc, n) : 0, h, rr);
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto h = windows(hw.size(), n);
    const auto rr = windows(rw.size(), n);
    add(h && rr ? clipped(hw, rw, n) : 0, h, rr);
  }
  if (orders == 0) return 0.0;
  p /= static_cast<double>(orders);
  r /= static_cast<double>(orders);
  if (p + r == 0.0) return 0.0;
  return 100.0 * ((1.0 + 4.0) * p * r / (4.0 * p + r));
}

}  // namespace cf::oracle
