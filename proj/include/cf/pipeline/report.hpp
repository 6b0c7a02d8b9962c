#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cf/common/jsonl.hpp"
#include "cf/pipeline/config.hpp"
#include "cf/pipeline/records.hpp"

namespace cf::pipeline {

/// Equal-width bins over [lo, hi]; a value equal to hi lands in the last bin and values
/// outside the range are counted separately.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
  std::size_t out_of_range = 0;
};

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins);
Json to_json(const Histogram& h);

struct StageCounts {
  std::size_t input = 0;
  std::size_t after_preprocess = 0;
  std::size_t after_filter1 = 0;
  std::size_t after_filter2 = 0;
};

Json to_json(const StageCounts& c);

struct ReportInputs {
  const PipelineConfig* config = nullptr;
  Json preprocess;  // 1_preprocess.json
  double similarity_threshold = 0.0;
  const std::vector<FilterDecision>* similarity = nullptr;
  const std::vector<RoundTripRecord>* records = nullptr;
  const std::vector<FilterDecision>* roundtrip = nullptr;
  std::optional<RoundTripThresholds> thresholds;  // absent when nothing reached Filtering II
};

/// Assembles report.json. Throws DataError when the decision files disagree with each
/// other or with the stage counts.
Json build_report(const ReportInputs& in);

}  // namespace cf::pipeline
