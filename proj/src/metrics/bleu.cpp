#include "cf/metrics/bleu.hpp"

#include <cmath>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"
#include "cf/metrics/ngram.hpp"

namespace cf::metrics {

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < kBleuMaxOrder; ++n) {
    correct[n] += other.correct[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats bleu_stats(const TokenSequence& hyp, const TokenSequence& ref) {
  BleuStats s;
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  for (std::size_t n = 1; n <= kBleuMaxOrder; ++n) {
    s.total[n - 1] = ngram_total(hyp.size(), n);
    if (s.total[n - 1] == 0) continue;
    s.correct[n - 1] = clipped_matches(count_ngrams(hyp, n), count_ngrams(ref, n));
  }
  return s;
}

double bleu_from_stats(const BleuStats& s) {
  if (s.hyp_len == 0 || s.correct[0] == 0) return 0.0;

  double log_sum = 0.0;
  double smooth = 1.0;
  std::size_t effective_order = 0;
  for (std::size_t n = 0; n < kBleuMaxOrder; ++n) {
    if (s.total[n] == 0) break;
    effective_order = n + 1;
    double precision;
    if (s.correct[n] == 0) {
      smooth *= 2.0;
      precision = 1.0 / (smooth * static_cast<double>(s.total[n]));
    } else {
      precision = static_cast<double>(s.correct[n]) / static_cast<double>(s.total[n]);
    }
    log_sum += std::log(precision);
  }

  const double brevity = s.hyp_len < s.ref_len
                             ? std::exp(1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len))
                             : 1.0;
  return 100.0 * brevity * std::exp(log_sum / static_cast<double>(effective_order));
}

double sentence_bleu(std::string_view hyp, std::string_view ref) {
  const auto ref_tokens = tokenize(ref);
  if (ref_tokens.empty()) throw ValidationError("BLEU reference is empty");
  const auto hyp_tokens = tokenize(hyp);
  if (hyp_tokens.empty()) {
    logger()->debug("BLEU: empty hypothesis scored 0");
    return 0.0;
  }
  return bleu_from_stats(bleu_stats(hyp_tokens, ref_tokens));
}

double corpus_bleu(std::span<const std::string> hyps, std::span<const std::string> refs) {
  if (hyps.size() != refs.size())
    throw ValidationError("corpus BLEU: " + std::to_string(hyps.size()) + " hypotheses vs " +
                          std::to_string(refs.size()) + " references");
  if (hyps.empty()) throw ValidationError("corpus BLEU needs at least one pair");
  BleuStats pooled;
  for (std::size_t i = 0; i < hyps.size(); ++i) pooled += bleu_stats(tokenize(hyps[i]), tokenize(refs[i]));
  if (pooled.ref_len == 0) throw ValidationError("corpus BLEU: all references are empty");
  return bleu_from_stats(pooled);
}

}  // namespace cf::metrics
