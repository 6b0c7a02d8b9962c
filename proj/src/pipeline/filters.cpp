#include "cf/pipeline/filters.hpp"

#include <cmath>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"
#include "cf/metrics/bleu.hpp"
#include "cf/metrics/cosine.hpp"
#include "cf/metrics/meteor.hpp"
#include "cf/pipeline/translate.hpp"

namespace cf::pipeline {

double mean(std::span<const double> values) {
  if (values.empty()) throw ValidationError("mean of an empty set");
  const double x0 = values.front();
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double d = v - x0;
    const double t = sum + d;
    comp += std::abs(sum) >= std::abs(d) ? (sum - t) + d : (d - t) + sum;
    sum = t;
  }
  return x0 + (sum + comp) / static_cast<double>(values.size());
}

namespace {

double checked_cosine(const metrics::EmbeddingVector& a, const metrics::EmbeddingVector& b) {
  if (a.dim() != b.dim())
    throw ProtocolError("embedding dimension changed between requests (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
  try {
    return metrics::cosine_similarity(a, b);
  } catch (const ValidationError& e) {
    throw ProtocolError(std::string("unusable embedding: ") + e.what());
  }
}

std::vector<double> pair_cosines(const backends::BackendClient& embed, const std::vector<std::string>& src,
                                 const std::vector<std::string>& tgt) {
  const auto a = backends::embed_batch(embed, src);
  const auto b = backends::embed_batch(embed, tgt);
  std::vector<double> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) out[i] = checked_cosine(a[i], b[i]);
  return out;
}

}  // namespace

double derive_similarity_threshold(const corpus::ParallelCorpus& reference, const backends::BackendClient& embed) {
  if (reference.empty()) throw ValidationError("cannot derive a similarity threshold from an empty corpus");
  std::vector<std::string> src;
  std::vector<std::string> tgt;
  src.reserve(reference.size());
  tgt.reserve(reference.size());
  for (const auto& p : reference) {
    src.push_back(p.src);
    tgt.push_back(p.tgt);
  }
  return mean(pair_cosines(embed, src, tgt));
}

FilterDecision similarity_decision(const std::string& id, double cosine, double threshold, std::string defect) {
  FilterDecision d;
  d.id = id;
  d.stage = FilterStage::similarity;
  d.scores = {{std::string(kCosine), cosine}};
  d.thresholds = {{std::string(kCosine), threshold}};
  d.passed = defect.empty() && meets_thresholds(d.scores, d.thresholds);
  d.reason = std::move(defect);
  return d;
}

FilterResult filter_similarity(std::span<const SimilarityItem> items, const backends::BackendClient& embed,
                               const SimilarityOptions& options) {
  FilterResult result;
  result.decisions.reserve(items.size());
  const std::size_t window = embed.endpoint().batch_size * std::max<std::size_t>(embed.endpoint().max_in_flight, 1);

  std::size_t begin = 0;
  try {
    while (begin < items.size()) {
      const std::size_t end = std::min(items.size(), begin + window);
      std::vector<std::string> src;
      std::vector<std::string> tgt;
      for (std::size_t i = begin; i < end; ++i) {
        if (!items[i].defect.empty()) continue;
        src.push_back(items[i].source);
        tgt.push_back(items[i].translation);
      }
      const auto cosines = src.empty() ? std::vector<double>{} : pair_cosines(embed, src, tgt);
      std::size_t k = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto& item = items[i];
        const double c = item.defect.empty() ? cosines[k++] : kUndefinedCosine;
        result.decisions.push_back(similarity_decision(item.id, c, options.threshold, item.defect));
        if (result.decisions.back().passed) result.retained.push_back(i);
      }
      begin = end;
    }
  } catch (const BackendError&) {
    if (options.on_partial) options.on_partial(result.decisions);
    throw;
  }
  return result;
}

void score_record(RoundTripRecord& r) {
  r.bleu = metrics::sentence_bleu(r.back_translation, r.src_original);
  r.meteor = metrics::meteor(r.back_translation, r.src_original);
}

namespace {

std::string join_lines(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += '\n';
    out += fields[i];
  }
  return out;
}

}  // namespace

std::vector<RoundTripRecord> back_translate(std::span<const RoundTripInput> items,
                                            const backends::BackendClient& translator,
                                            std::string_view src_lang, std::string_view tgt_lang) {
  FieldGroups fwd;
  fwd.reserve(items.size());
  for (const auto& item : items) fwd.push_back(item.fwd_fields);
  const auto back = translate_fields(translator, fwd, tgt_lang, src_lang);

  std::vector<RoundTripRecord> records;
  records.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    RoundTripRecord r;
    r.id = items[i].id;
    r.src_original = join_lines(items[i].src_fields);
    r.fwd_translation = join_lines(items[i].fwd_fields);
    r.back_translation = join_lines(back[i]);
    r.cosine = items[i].cosine;
    score_record(r);
    records.push_back(std::move(r));
  }
  return records;
}

RoundTripResult filter_roundtrip(std::span<const RoundTripRecord> records, ThresholdMode mode,
                                 std::optional<RoundTripThresholds> fixed) {
  if (records.empty()) throw ValidationError("filter_roundtrip needs at least one record");
  RoundTripResult result;
  if (mode == ThresholdMode::fixed) {
    if (!fixed) throw ValidationError("fixed threshold mode needs mu_bleu and mu_meteor");
    result.thresholds = *fixed;
  } else {
    std::vector<double> bleu;
    std::vector<double> meteor;
    bleu.reserve(records.size());
    meteor.reserve(records.size());
    for (const auto& r : records) {
      bleu.push_back(r.bleu);
      meteor.push_back(r.meteor);
    }
    result.thresholds.mu_bleu = mean(bleu);
    result.thresholds.mu_meteor = mean(meteor);
  }
  result.thresholds.mode = mode;

  const ScoreList thresholds{{std::string(kBleu), result.thresholds.mu_bleu},
                             {std::string(kMeteor), result.thresholds.mu_meteor}};
  result.decisions.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    FilterDecision d;
    d.id = records[i].id;
    d.stage = FilterStage::roundtrip;
    d.scores = {{std::string(kBleu), records[i].bleu}, {std::string(kMeteor), records[i].meteor}};
    d.thresholds = thresholds;
    d.passed = meets_thresholds(d.scores, d.thresholds);
    if (d.passed) result.retained.push_back(i);
    result.decisions.push_back(std::move(d));
  }
  logger()->info("filter-rt: mu_bleu={:.4f} mu_meteor={:.4f}, {} of {} retained", result.thresholds.mu_bleu,
                 result.thresholds.mu_meteor, result.retained.size(), records.size());
  return result;
}

}  // namespace cf::pipeline
