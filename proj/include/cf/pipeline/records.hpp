#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cf/common/jsonl.hpp"

namespace cf::pipeline {

/// Metric identifiers used in decisions and reports.
inline constexpr std::string_view kCosine = "cosine";
inline constexpr std::string_view kBleu = "bleu";
inline constexpr std::string_view kMeteor = "meteor-exact";

/// Cosine recorded for an item that could not be embedded (empty forward translation).
inline constexpr double kUndefinedCosine = -1.0;

/// One item carried through forward and back translation, with its fidelity scores.
struct RoundTripRecord {
  std::string id;
  std::string src_original;
  std::string fwd_translation;
  std::string back_translation;
  double bleu = 0.0;    // [0, 100]
  double meteor = 0.0;  // [0, 1]
  double cosine = 0.0;  // [-1, 1], from the similarity stage

  bool operator==(const RoundTripRecord&) const = default;
};

enum class FilterStage { similarity, roundtrip };
std::string_view to_string(FilterStage stage) noexcept;

/// Ordered metric -> value pairs; order is part of the serialized form.
using ScoreList = std::vector<std::pair<std::string, double>>;

struct FilterDecision {
  std::string id;
  FilterStage stage = FilterStage::similarity;
  ScoreList scores;
  ScoreList thresholds;
  bool passed = false;
  std::string reason;  // set when an item fails without being scored

  bool operator==(const FilterDecision&) const = default;
};

/// True when every score reaches its threshold (inclusive).
bool meets_thresholds(const ScoreList& scores, const ScoreList& thresholds);

enum class ThresholdMode { data_mean, fixed };
std::string_view to_string(ThresholdMode mode) noexcept;
ThresholdMode parse_threshold_mode(std::string_view name);

struct RoundTripThresholds {
  double mu_bleu = 0.0;
  double mu_meteor = 0.0;
  ThresholdMode mode = ThresholdMode::data_mean;

  bool operator==(const RoundTripThresholds&) const = default;
};

Json to_json(const RoundTripRecord& r);
Json to_json(const FilterDecision& d);
Json to_json(const RoundTripThresholds& t);
RoundTripThresholds thresholds_from_json(const Json& j);

void save_records(const std::vector<RoundTripRecord>& records, const std::filesystem::path& path);
std::vector<RoundTripRecord> load_records(const std::filesystem::path& path);

void save_decisions(const std::vector<FilterDecision>& decisions, const std::filesystem::path& path);
std::vector<FilterDecision> load_decisions(const std::filesystem::path& path);

}  // namespace cf::pipeline
