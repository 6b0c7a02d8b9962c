#include "cf/pipeline/stages.hpp"

#include <chrono>
#include <unordered_map>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"
#include "cf/corpus/io.hpp"
#include "cf/corpus/preprocess.hpp"
#include "cf/pipeline/filters.hpp"
#include "cf/pipeline/render.hpp"
#include "cf/pipeline/report.hpp"
#include "cf/pipeline/translate.hpp"

namespace cf::pipeline {

namespace fs = std::filesystem;

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::vector<fs::path> CheckpointLayout::outputs(PipelineStep step) const {
  switch (step) {
    case PipelineStep::preprocess: return {preprocessed(), preprocess_meta()};
    case PipelineStep::translate: return {translated()};
    case PipelineStep::filter_similarity: return {similarity_decisions(), similarity_meta()};
    case PipelineStep::backtranslate: return {roundtrip_records()};
    case PipelineStep::filter_roundtrip:
      return {roundtrip_decisions(), roundtrip_thresholds(), output_src(), output_tgt(), output_parallel(), report()};
  }
  return {};
}

namespace {

using corpus::LoadOptions;
using corpus::Strictness;

constexpr LoadOptions kRelaxed{Strictness::relaxed};

std::size_t index_of(PipelineStep step) {
  for (std::size_t i = 0; i < std::size(kAllSteps); ++i)
    if (kAllSteps[i] == step) return i;
  return 0;
}

Json endpoint_identity(const PipelineConfig& c, const std::string& name) {
  const auto& e = c.endpoint(name);
  Json j;
  j["name"] = e.name;
  j["base_url"] = e.base_url;
  j["kind"] = std::string(backends::to_string(e.kind));
  return j;
}

template <typename Dataset>
void check_aligned(const Dataset& a, const Dataset& b, const fs::path& pa, const fs::path& pb) {
  if (a.size() != b.size())
    throw DataError(pb.string() + " has " + std::to_string(b.size()) + " entries, " + pa.string() + " has " +
                    std::to_string(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != b[i].id)
      throw DataError(pb.string() + ": entry " + std::to_string(i + 1) + " is '" + b[i].id + "', expected '" +
                      a[i].id + "'");
}

template <typename Dataset>
std::vector<SimilarityItem> similarity_items(const Dataset& original, const Dataset& translated) {
  std::vector<SimilarityItem> items;
  items.reserve(original.size());
  for (std::size_t i = 0; i < original.size(); ++i)
    items.push_back({original[i].id, render_flat_text(original[i]), render_flat_text(translated[i]),
                     translation_defect(translated[i])});
  return items;
}

template <typename Dataset>
std::vector<RoundTripInput> roundtrip_inputs(const Dataset& original, const Dataset& translated,
                                             const std::vector<FilterDecision>& decisions) {
  std::vector<RoundTripInput> items;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (!decisions[i].passed) continue;
    items.push_back({original[i].id, text_fields(original[i]), text_fields(translated[i]),
                     decisions[i].scores.front().second});
  }
  return items;
}

template <typename Dataset>
void write_outputs(const CheckpointLayout& layout, const PipelineConfig& config, const Dataset& original,
                   const Dataset& translated, const std::vector<RoundTripRecord>& records,
                   const std::vector<std::size_t>& retained) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < original.size(); ++i) pos.emplace(original[i].id, i);
  Dataset src;
  Dataset tgt;
  corpus::ParallelCorpus parallel;
  for (auto k : retained) {
    const auto it = pos.find(records[k].id);
    if (it == pos.end()) throw DataError("round-trip record '" + records[k].id + "' is not in the preprocessed data");
    const auto& o = original[it->second];
    const auto& t = translated[it->second];
    src.push_back(o);
    tgt.push_back(t);
    parallel.push_back({o.id, render_flat_text(o), render_flat_text(t), config.src_lang, config.tgt_lang});
  }
  fs::create_directories(layout.output_parallel().parent_path());
  corpus::save_dataset(src, layout.output_src());
  corpus::save_dataset(tgt, layout.output_tgt());
  corpus::save_dataset(parallel, layout.output_parallel());
}

std::vector<FilterDecision> load_stage_decisions(const fs::path& path, FilterStage stage) {
  auto d = load_decisions(path);
  for (const auto& x : d)
    if (x.stage != stage) throw DataError(path.string() + ": decision for '" + x.id + "' has the wrong stage");
  return d;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config, PipelineEnv env)
    : config_(std::move(config)), env_(std::move(env)), layout_{config_.checkpoint_path()} {
  if (!env_.transports) env_.transports = backends::http_transport_factory();
}

const backends::BackendClient& Pipeline::client(const std::string& name) {
  auto it = clients_.find(name);
  if (it != clients_.end()) return *it->second;
  const auto& endpoint = config_.endpoint(name);
  if (config_.audit && !audit_) audit_ = std::make_shared<backends::AuditLog>(layout_.audit());
  auto c = std::make_unique<backends::BackendClient>(endpoint, env_.transports(endpoint), audit_, env_.sleeper);
  return *clients_.emplace(name, std::move(c)).first->second;
}

std::string Pipeline::stage_fingerprint(PipelineStep step) const {
  if (auto it = fingerprints_.find(step); it != fingerprints_.end()) return it->second;
  Json j;
  j["stage"] = std::string(to_string(step));
  if (step != PipelineStep::preprocess) j["upstream"] = stage_fingerprint(kAllSteps[index_of(step) - 1]);
  switch (step) {
    case PipelineStep::preprocess: {
      j["task"] = std::string(corpus::to_string(config_.task));
      j["dataset"] = fnv1a_hex(jsonl::read_text(config_.dataset_path()));
      const auto full = to_json(config_);
      j["options"] = full["stages"]["preprocess"];
      if (config_.preprocess.rewrite.enabled)
        j["rewrite_endpoint"] = endpoint_identity(config_, config_.preprocess.rewrite.endpoint);
      break;
    }
    case PipelineStep::translate:
      j["src_lang"] = config_.src_lang;
      j["tgt_lang"] = config_.tgt_lang;
      j["endpoint"] = endpoint_identity(config_, config_.translate_endpoint);
      break;
    case PipelineStep::filter_similarity:
      j["endpoint"] = endpoint_identity(config_, config_.similarity.endpoint);
      if (config_.similarity.mode == SimilarityThresholdMode::fixed) {
        j["threshold"] = config_.similarity.threshold;
      } else {
        j["reference"] = fnv1a_hex(jsonl::read_text(config_.resolve(config_.similarity.reference)));
      }
      break;
    case PipelineStep::backtranslate:
      j["endpoint"] = endpoint_identity(config_, config_.backtranslate_endpoint);
      break;
    case PipelineStep::filter_roundtrip:
      j["mode"] = std::string(to_string(config_.roundtrip.mode));
      if (config_.roundtrip.mode == ThresholdMode::fixed) {
        j["mu_bleu"] = config_.roundtrip.mu_bleu;
        j["mu_meteor"] = config_.roundtrip.mu_meteor;
      }
      break;
  }
  return fingerprints_[step] = fnv1a_hex(j.dump());
}

Json Pipeline::read_manifest() const {
  if (!fs::exists(layout_.manifest())) return Json{{"stages", Json::object()}};
  auto j = jsonl::read_json(layout_.manifest());
  if (!j.is_object() || !j.contains("stages") || !j["stages"].is_object())
    throw DataError(layout_.manifest().string() + ": malformed manifest");
  return j;
}

void Pipeline::update_manifest(PipelineStep step, bool done) {
  auto m = read_manifest();
  auto& stages = m["stages"];
  for (std::size_t i = index_of(step); i < std::size(kAllSteps); ++i) stages.erase(std::string(to_string(kAllSteps[i])));
  if (done) {
    // keep stage order stable in the file
    Json ordered = Json::object();
    for (auto s : kAllSteps) {
      const std::string key(to_string(s));
      if (s == step) {
        ordered[key] = stage_fingerprint(step);
      } else if (stages.contains(key)) {
        ordered[key] = stages[key];
      }
    }
    stages = ordered;
  }
  jsonl::write_json(layout_.manifest(), m);
}

bool Pipeline::complete(PipelineStep step) const {
  const auto m = read_manifest();
  const std::string key(to_string(step));
  if (!m["stages"].contains(key) || m["stages"][key] != stage_fingerprint(step)) return false;
  for (const auto& p : layout_.outputs(step))
    if (!fs::exists(p)) return false;
  return true;
}

void Pipeline::record_timing(PipelineStep step, double seconds) {
  Json t = fs::exists(layout_.timing()) ? jsonl::read_json(layout_.timing()) : Json::object();
  if (!t.is_object()) t = Json::object();
  t[std::string(to_string(step))] = seconds;
  jsonl::write_json(layout_.timing(), t);
}

void Pipeline::run(PipelineStep step) {
  const PipelineStep one[] = {step};
  validate_for(config_, one);
  for (std::size_t i = 0; i < index_of(step); ++i)
    if (!complete(kAllSteps[i]))
      throw ValidationError(std::string(to_string(step)) + " needs a complete " +
                            std::string(to_string(kAllSteps[i])) + " checkpoint for this config in " +
                            layout_.dir.string());

  fs::create_directories(layout_.dir);
  update_manifest(step, false);
  logger()->info("{}: start", to_string(step));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (step) {
      case PipelineStep::preprocess: preprocess(); break;
      case PipelineStep::translate: translate(); break;
      case PipelineStep::filter_similarity: filter_similarity(); break;
      case PipelineStep::backtranslate: backtranslate(); break;
      case PipelineStep::filter_roundtrip: filter_roundtrip(); break;
    }
  } catch (const std::exception& e) {
    logger()->error("{}: failed: {}", to_string(step), e.what());
    throw;
  }
  update_manifest(step, true);
  record_timing(step, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

Json Pipeline::run_all() {
  validate_for(config_, kAllSteps);
  for (auto step : kAllSteps) {
    if (complete(step)) {
      logger()->info("{}: reusing checkpoint", to_string(step));
      continue;
    }
    run(step);
  }
  return jsonl::read_json(layout_.report());
}

Json Pipeline::plan(std::span<const PipelineStep> steps) const {
  validate_for(config_, steps);
  Json j;
  j["checkpoint_dir"] = layout_.dir.string();
  j["stages"] = Json::array();
  bool upstream_changed = false;
  for (auto step : steps) {
    Json s;
    s["stage"] = std::string(to_string(step));
    const bool reuse = steps.size() > 1 && !upstream_changed && complete(step);
    upstream_changed = upstream_changed || !reuse;
    s["action"] = reuse ? "reuse" : "run";
    s["fingerprint"] = stage_fingerprint(step);
    switch (step) {
      case PipelineStep::preprocess:
        s["endpoint"] = config_.preprocess.rewrite.enabled ? Json(config_.preprocess.rewrite.endpoint) : Json(nullptr);
        break;
      case PipelineStep::translate: s["endpoint"] = config_.translate_endpoint; break;
      case PipelineStep::filter_similarity: s["endpoint"] = config_.similarity.endpoint; break;
      case PipelineStep::backtranslate: s["endpoint"] = config_.backtranslate_endpoint; break;
      case PipelineStep::filter_roundtrip: s["endpoint"] = nullptr; break;
    }
    s["outputs"] = Json::array();
    for (const auto& p : layout_.outputs(step)) s["outputs"].push_back(p.string());
    j["stages"].push_back(s);
  }
  return j;
}

void Pipeline::preprocess() {
  const auto path = config_.dataset_path();
  Json meta;
  meta["dataset"] = config_.dataset;
  if (config_.task == corpus::DatasetKind::sa) {
    auto data = corpus::load_sa(path);
    meta["input_count"] = data.size();
    if (data.empty()) throw DataError(path.string() + " holds no entries");
    if (config_.preprocess.length_filter) {
      auto filtered = corpus::q3_length_filter(data);
      meta["length_cutoff"] = filtered.cutoff;
      data = std::move(filtered.retained);
    } else {
      meta["length_cutoff"] = nullptr;
    }
    if (config_.preprocess.rewrite.enabled)
      data = rewrite_dataset(data, client(config_.preprocess.rewrite.endpoint), config_.preprocess.rewrite.instruction);
    meta["after_preprocess"] = data.size();
    corpus::save_dataset(data, layout_.preprocessed());
  } else {
    auto data = corpus::load_mcqa(path);
    meta["input_count"] = data.size();
    if (data.empty()) throw DataError(path.string() + " holds no entries");
    data = corpus::drop_choice_counts(data, config_.preprocess.excluded_choice_counts);
    meta["excluded_choice_counts"] = Json(config_.preprocess.excluded_choice_counts);
    if (config_.preprocess.rewrite.enabled)
      data = rewrite_dataset(data, client(config_.preprocess.rewrite.endpoint), config_.preprocess.rewrite.instruction);
    meta["after_preprocess"] = data.size();
    corpus::save_dataset(data, layout_.preprocessed());
  }
  meta["rewrite"] = config_.preprocess.rewrite.enabled;
  jsonl::write_json(layout_.preprocess_meta(), meta);
  logger()->info("preprocess: {} -> {}", meta["input_count"].get<std::size_t>(),
                 meta["after_preprocess"].get<std::size_t>());
}

void Pipeline::translate() {
  const auto& translator = client(config_.translate_endpoint);
  if (config_.task == corpus::DatasetKind::sa) {
    const auto data = corpus::load_sa(layout_.preprocessed(), kRelaxed);
    corpus::save_dataset(translate_dataset(data, translator, config_.src_lang, config_.tgt_lang), layout_.translated());
  } else {
    const auto data = corpus::load_mcqa(layout_.preprocessed(), kRelaxed);
    corpus::save_dataset(translate_dataset(data, translator, config_.src_lang, config_.tgt_lang), layout_.translated());
  }
}

double Pipeline::similarity_threshold() {
  if (config_.similarity.mode == SimilarityThresholdMode::fixed) return config_.similarity.threshold;
  const auto reference = corpus::load_parallel(config_.resolve(config_.similarity.reference));
  const double t = derive_similarity_threshold(reference, client(config_.similarity.endpoint));
  logger()->info("filter-sim: derived threshold {:.6f} from {} reference pairs", t, reference.size());
  return t;
}

void Pipeline::filter_similarity() {
  std::vector<SimilarityItem> items;
  if (config_.task == corpus::DatasetKind::sa) {
    const auto a = corpus::load_sa(layout_.preprocessed(), kRelaxed);
    const auto b = corpus::load_sa(layout_.translated(), kRelaxed);
    check_aligned(a, b, layout_.preprocessed(), layout_.translated());
    items = similarity_items(a, b);
  } else {
    const auto a = corpus::load_mcqa(layout_.preprocessed(), kRelaxed);
    const auto b = corpus::load_mcqa(layout_.translated(), kRelaxed);
    check_aligned(a, b, layout_.preprocessed(), layout_.translated());
    items = similarity_items(a, b);
  }

  // Decisions persisted by an earlier failed attempt under the same config are kept.
  std::vector<FilterDecision> done;
  std::optional<double> threshold;
  const auto fp = stage_fingerprint(PipelineStep::filter_similarity);
  if (fs::exists(layout_.similarity_partial()) && fs::exists(layout_.similarity_partial_meta())) {
    const auto meta = jsonl::read_json(layout_.similarity_partial_meta());
    if (meta.value("fingerprint", "") == fp) {
      done = load_stage_decisions(layout_.similarity_partial(), FilterStage::similarity);
      if (done.size() > items.size()) done.clear();
      for (std::size_t i = 0; i < done.size(); ++i)
        if (done[i].id != items[i].id) {
          done.clear();
          break;
        }
      if (!done.empty()) {
        threshold = meta.at("threshold").get<double>();
        logger()->info("filter-sim: resuming after {} persisted decisions", done.size());
      }
    }
  }
  if (!threshold) threshold = similarity_threshold();

  SimilarityOptions options;
  options.threshold = *threshold;
  options.on_partial = [&](const std::vector<FilterDecision>& partial) {
    auto all = done;
    all.insert(all.end(), partial.begin(), partial.end());
    save_decisions(all, layout_.similarity_partial());
    jsonl::write_json(layout_.similarity_partial_meta(), Json{{"fingerprint", fp}, {"threshold", *threshold}});
    logger()->warn("filter-sim: {} decisions persisted to {}", all.size(), layout_.similarity_partial().string());
  };
  const std::span<const SimilarityItem> rest(items.data() + done.size(), items.size() - done.size());
  auto result = pipeline::filter_similarity(rest, client(config_.similarity.endpoint), options);

  auto decisions = std::move(done);
  decisions.insert(decisions.end(), result.decisions.begin(), result.decisions.end());
  std::size_t retained = 0;
  for (const auto& d : decisions) retained += d.passed ? 1 : 0;

  save_decisions(decisions, layout_.similarity_decisions());
  Json meta;
  meta["mode"] = config_.similarity.mode == SimilarityThresholdMode::fixed ? "fixed" : "derive";
  meta[std::string(kCosine)] = *threshold;
  meta["input"] = decisions.size();
  meta["retained"] = retained;
  jsonl::write_json(layout_.similarity_meta(), meta);
  fs::remove(layout_.similarity_partial());
  fs::remove(layout_.similarity_partial_meta());
  logger()->info("filter-sim: threshold {:.4f}, {} of {} retained", *threshold, retained, decisions.size());
}

void Pipeline::backtranslate() {
  const auto decisions = load_stage_decisions(layout_.similarity_decisions(), FilterStage::similarity);
  std::vector<RoundTripInput> items;
  if (config_.task == corpus::DatasetKind::sa) {
    const auto a = corpus::load_sa(layout_.preprocessed(), kRelaxed);
    const auto b = corpus::load_sa(layout_.translated(), kRelaxed);
    check_aligned(a, b, layout_.preprocessed(), layout_.translated());
    if (decisions.size() != a.size()) throw DataError("similarity decisions do not cover the preprocessed data");
    items = roundtrip_inputs(a, b, decisions);
  } else {
    const auto a = corpus::load_mcqa(layout_.preprocessed(), kRelaxed);
    const auto b = corpus::load_mcqa(layout_.translated(), kRelaxed);
    check_aligned(a, b, layout_.preprocessed(), layout_.translated());
    if (decisions.size() != a.size()) throw DataError("similarity decisions do not cover the preprocessed data");
    items = roundtrip_inputs(a, b, decisions);
  }
  std::vector<RoundTripRecord> records;
  if (!items.empty())
    records = back_translate(items, client(config_.backtranslate_endpoint), config_.src_lang, config_.tgt_lang);
  save_records(records, layout_.roundtrip_records());
  logger()->info("backtranslate: {} records", records.size());
}

void Pipeline::filter_roundtrip() {
  const auto records = load_records(layout_.roundtrip_records());
  RoundTripResult result;
  std::optional<RoundTripThresholds> thresholds;
  const RoundTripThresholds fixed{config_.roundtrip.mu_bleu, config_.roundtrip.mu_meteor, ThresholdMode::fixed};
  if (!records.empty()) {
    result = pipeline::filter_roundtrip(records, config_.roundtrip.mode, fixed);
    thresholds = result.thresholds;
  } else if (config_.roundtrip.mode == ThresholdMode::fixed) {
    thresholds = fixed;
  }
  save_decisions(result.decisions, layout_.roundtrip_decisions());
  jsonl::write_json(layout_.roundtrip_thresholds(), thresholds ? to_json(*thresholds) : Json(nullptr));

  if (config_.task == corpus::DatasetKind::sa) {
    write_outputs(layout_, config_, corpus::load_sa(layout_.preprocessed(), kRelaxed),
                  corpus::load_sa(layout_.translated(), kRelaxed), records, result.retained);
  } else {
    write_outputs(layout_, config_, corpus::load_mcqa(layout_.preprocessed(), kRelaxed),
                  corpus::load_mcqa(layout_.translated(), kRelaxed), records, result.retained);
  }

  const auto sim = load_stage_decisions(layout_.similarity_decisions(), FilterStage::similarity);
  const auto sim_meta = jsonl::read_json(layout_.similarity_meta());
  ReportInputs in;
  in.config = &config_;
  in.preprocess = jsonl::read_json(layout_.preprocess_meta());
  in.similarity_threshold = sim_meta.at(std::string(kCosine)).get<double>();
  in.similarity = &sim;
  in.records = &records;
  in.roundtrip = &result.decisions;
  in.thresholds = thresholds;
  jsonl::write_json(layout_.report(), build_report(in));
}

}  // namespace cf::pipeline
