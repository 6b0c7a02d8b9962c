#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cf/backends/endpoint.hpp"
#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"
#include "cf/pipeline/records.hpp"

namespace cf::pipeline {

struct RewriteConfig {
  bool enabled = false;
  std::string endpoint;
  std::string instruction;
};

struct PreprocessConfig {
  bool length_filter = true;                             // SA: nearest-rank Q3 word cutoff
  std::set<std::size_t> excluded_choice_counts{2, 6};  // MCQA
  RewriteConfig rewrite;
};

enum class SimilarityThresholdMode {
  fixed,   // use `threshold`
  derive,  // mean cosine over the aligned reference corpus
};

struct SimilarityConfig {
  std::string endpoint;
  SimilarityThresholdMode mode = SimilarityThresholdMode::fixed;
  double threshold = 0.68;
  std::string reference;  // parallel JSONL, required in derive mode
};

struct RoundTripConfig {
  ThresholdMode mode = ThresholdMode::data_mean;
  double mu_bleu = 0.0;
  double mu_meteor = 0.0;
};

/// pipeline.json. Relative paths are kept verbatim and resolved against `base_dir`.
struct PipelineConfig {
  corpus::DatasetKind task = corpus::DatasetKind::sa;
  std::string dataset;
  std::string src_lang{corpus::kDefaultSourceLang};
  std::string tgt_lang{corpus::kDefaultTargetLang};
  std::string checkpoint_dir;
  std::uint64_t seed = 0;
  std::map<std::string, backends::BackendEndpoint> endpoints;
  std::string translate_endpoint;
  std::string backtranslate_endpoint;  // defaults to translate_endpoint
  PreprocessConfig preprocess;
  SimilarityConfig similarity;
  RoundTripConfig roundtrip;
  bool audit = true;

  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const;
  std::filesystem::path dataset_path() const { return resolve(dataset); }
  std::filesystem::path checkpoint_path() const { return resolve(checkpoint_dir); }
  const backends::BackendEndpoint& endpoint(const std::string& name) const;
};

/// Parses and structurally validates a config document. Throws ValidationError.
PipelineConfig pipeline_config_from_json(const Json& j, const std::filesystem::path& base_dir = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Only the "endpoints" object of a config file; the rest of the document is ignored.
std::map<std::string, backends::BackendEndpoint> load_endpoints(const std::filesystem::path& path);

/// Canonical form (paths as written, no secrets). Stable key order.
Json to_json(const PipelineConfig& config);

enum class PipelineStep { preprocess, translate, filter_similarity, backtranslate, filter_roundtrip };
std::string_view to_string(PipelineStep step) noexcept;
inline constexpr PipelineStep kAllSteps[] = {PipelineStep::preprocess, PipelineStep::translate,
                                             PipelineStep::filter_similarity, PipelineStep::backtranslate,
                                             PipelineStep::filter_roundtrip};

/// Checks everything that can be checked without a network call before `steps` run:
/// referenced endpoints exist with the right kind, and required input files exist.
void validate_for(const PipelineConfig& config, std::span<const PipelineStep> steps);

}  // namespace cf::pipeline
