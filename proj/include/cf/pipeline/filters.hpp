#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cf/backends/client.hpp"
#include "cf/corpus/types.hpp"
#include "cf/pipeline/records.hpp"

namespace cf::pipeline {

/// Mean computed as x0 + sum(x_i - x0) / n with compensated summation. Exact when all
/// values are equal. Throws ValidationError on empty input.
double mean(std::span<const double> values);

/// Mean cosine between embed(src) and embed(tgt) over the reference pairs.
double derive_similarity_threshold(const corpus::ParallelCorpus& reference, const backends::BackendClient& embed);

/// One item entering Filtering I. A non-empty `defect` fails the item without a request,
/// with cosine recorded as kUndefinedCosine.
struct SimilarityItem {
  std::string id;
  std::string source;
  std::string translation;
  std::string defect;
};

struct FilterResult {
  std::vector<std::size_t> retained;  // indices into the input, ascending
  std::vector<FilterDecision> decisions;
};

struct SimilarityOptions {
  double threshold = 0.68;
  /// Receives the decisions made so far when the backend fails mid-way.
  std::function<void(const std::vector<FilterDecision>&)> on_partial;
};

FilterResult filter_similarity(std::span<const SimilarityItem> items, const backends::BackendClient& embed,
                               const SimilarityOptions& options);

/// Decision for a known cosine (shared by the stage and by re-evaluation from checkpoints).
FilterDecision similarity_decision(const std::string& id, double cosine, double threshold,
                                   std::string defect = {});

/// Item entering back-translation: original fields, forward-translated fields, and the
/// cosine recorded by Filtering I.
struct RoundTripInput {
  std::string id;
  std::vector<std::string> src_fields;
  std::vector<std::string> fwd_fields;
  double cosine = 0.0;
};

/// Translates fwd_fields from tgt_lang back to src_lang and scores each rendering
/// (fields joined by '\n') against the original with sentence BLEU and exact METEOR.
std::vector<RoundTripRecord> back_translate(std::span<const RoundTripInput> items,
                                            const backends::BackendClient& translator,
                                            std::string_view src_lang, std::string_view tgt_lang);

/// Scores a record from its texts.
void score_record(RoundTripRecord& record);

struct RoundTripResult {
  std::vector<std::size_t> retained;
  std::vector<FilterDecision> decisions;
  RoundTripThresholds thresholds;
};

/// Filtering II. In data_mean mode the thresholds are the means over all `records`;
/// in fixed mode `fixed` is used as given. Both inequalities must hold (inclusive).
/// Throws ValidationError on empty input.
RoundTripResult filter_roundtrip(std::span<const RoundTripRecord> records, ThresholdMode mode,
                                 std::optional<RoundTripThresholds> fixed = std::nullopt);

}  // namespace cf::pipeline
