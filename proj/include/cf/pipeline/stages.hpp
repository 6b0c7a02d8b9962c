#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>

#include "cf/backends/audit.hpp"
#include "cf/backends/client.hpp"
#include "cf/backends/transport.hpp"
#include "cf/common/jsonl.hpp"
#include "cf/pipeline/config.hpp"

namespace cf::pipeline {

/// Files of a checkpoint directory.
struct CheckpointLayout {
  std::filesystem::path dir;

  std::filesystem::path manifest() const { return dir / "manifest.json"; }
  std::filesystem::path preprocessed() const { return dir / "1_preprocess.jsonl"; }
  std::filesystem::path preprocess_meta() const { return dir / "1_preprocess.json"; }
  std::filesystem::path translated() const { return dir / "2_translate.jsonl"; }
  std::filesystem::path similarity_decisions() const { return dir / "3_filter_sim.decisions.jsonl"; }
  std::filesystem::path similarity_meta() const { return dir / "3_filter_sim.json"; }
  std::filesystem::path similarity_partial() const { return dir / "3_filter_sim.decisions.partial.jsonl"; }
  std::filesystem::path similarity_partial_meta() const { return dir / "3_filter_sim.partial.json"; }
  std::filesystem::path roundtrip_records() const { return dir / "4_roundtrip.jsonl"; }
  std::filesystem::path roundtrip_decisions() const { return dir / "5_filter_rt.decisions.jsonl"; }
  std::filesystem::path roundtrip_thresholds() const { return dir / "5_filter_rt.thresholds.json"; }
  std::filesystem::path output_src() const { return dir / "output" / "synthetic.src.jsonl"; }
  std::filesystem::path output_tgt() const { return dir / "output" / "synthetic.tgt.jsonl"; }
  std::filesystem::path output_parallel() const { return dir / "output" / "synthetic.parallel.jsonl"; }
  std::filesystem::path report() const { return dir / "report.json"; }
  std::filesystem::path timing() const { return dir / "timing.json"; }
  std::filesystem::path audit() const { return dir / "audit.jsonl"; }

  std::vector<std::filesystem::path> outputs(PipelineStep step) const;
};

struct PipelineEnv {
  backends::TransportFactory transports;
  backends::Sleeper sleeper;  // null: real sleeping
};

/// Runs the synthesis stages against a checkpoint directory. Every stage reads its inputs
/// from the directory and writes its outputs there; manifest.json records a fingerprint
/// per completed stage so that a later run can reuse matching checkpoints.
class Pipeline {
public:
  Pipeline(PipelineConfig config, PipelineEnv env);

  const PipelineConfig& config() const noexcept { return config_; }
  const CheckpointLayout& layout() const noexcept { return layout_; }

  /// Runs one stage. Upstream stages must be complete for the current config.
  void run(PipelineStep step);

  /// Runs every stage, reusing complete checkpoints. Returns report.json.
  Json run_all();

  /// True when the stage's checkpoint exists and was produced under the current config.
  bool complete(PipelineStep step) const;

  /// Validation plus the list of stages that would run or be reused. No network, no writes.
  Json plan(std::span<const PipelineStep> steps) const;

  /// Fingerprint of everything that determines a stage's output, including upstream stages.
  std::string stage_fingerprint(PipelineStep step) const;

private:
  void preprocess();
  void translate();
  void filter_similarity();
  void backtranslate();
  void filter_roundtrip();

  const backends::BackendClient& client(const std::string& endpoint);
  Json read_manifest() const;
  void update_manifest(PipelineStep step, bool done);
  void record_timing(PipelineStep step, double seconds);
  double similarity_threshold();

  PipelineConfig config_;
  PipelineEnv env_;
  CheckpointLayout layout_;
  std::shared_ptr<backends::AuditLog> audit_;
  std::map<std::string, std::unique_ptr<backends::BackendClient>> clients_;
  mutable std::map<PipelineStep, std::string> fingerprints_;
};

/// FNV-1a, 64 bit, as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace cf::pipeline
