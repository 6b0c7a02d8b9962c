#include "cf/pipeline/config.hpp"

#include <cmath>

#include "cf/common/error.hpp"

namespace cf::pipeline {

namespace fs = std::filesystem;

std::string_view to_string(PipelineStep step) noexcept {
  switch (step) {
    case PipelineStep::preprocess: return "preprocess";
    case PipelineStep::translate: return "translate";
    case PipelineStep::filter_similarity: return "filter-sim";
    case PipelineStep::backtranslate: return "backtranslate";
    case PipelineStep::filter_roundtrip: return "filter-rt";
  }
  return "?";
}

fs::path PipelineConfig::resolve(const std::string& path) const {
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

const backends::BackendEndpoint& PipelineConfig::endpoint(const std::string& name) const {
  auto it = endpoints.find(name);
  if (it == endpoints.end()) throw ValidationError("endpoint '" + name + "' is not defined in the config");
  return it->second;
}

namespace {

bool non_negative_integer(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

class Reader {
public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + " must be an object");
  }

  void only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, _] : j_.items()) {
      bool ok = false;
      for (auto k : keys) ok = ok || key == k;
      if (!ok) throw ValidationError(where_ + ": unknown field '" + key + "'");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  std::string str(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    auto it = j_.find(key);
    if (it == j_.end()) {
      if (fallback) return *fallback;
      throw ValidationError(where_ + ": missing field '" + key + "'");
    }
    if (!it->is_string()) throw ValidationError(where_ + ": '" + key + "' must be a string");
    return it->get<std::string>();
  }

  double num(const char* key, double fallback) const {
    auto it = j_.find(key);
    if (it == j_.end()) return fallback;
    if (!it->is_number()) throw ValidationError(where_ + ": '" + key + "' must be a number");
    return it->get<double>();
  }

  bool flag(const char* key, bool fallback) const {
    auto it = j_.find(key);
    if (it == j_.end()) return fallback;
    if (!it->is_boolean()) throw ValidationError(where_ + ": '" + key + "' must be a boolean");
    return it->get<bool>();
  }

  Reader sub(const char* key) const {
    static const Json empty = Json::object();
    auto it = j_.find(key);
    return Reader(it == j_.end() ? empty : *it, where_ + "." + key);
  }

  const Json& raw() const { return j_; }
  const std::string& where() const { return where_; }

private:
  const Json& j_;
  std::string where_;
};

}  // namespace

PipelineConfig pipeline_config_from_json(const Json& j, const fs::path& base_dir) {
  Reader r(j, "config");
  r.only({"task", "dataset", "src_lang", "tgt_lang", "checkpoint_dir", "seed", "endpoints", "stages", "audit"});

  PipelineConfig c;
  c.base_dir = base_dir;
  const auto task = r.str("task");
  c.task = corpus::parse_kind(task);
  if (c.task == corpus::DatasetKind::parallel) throw ValidationError("config.task must be sa or mcqa");
  c.dataset = r.str("dataset");
  c.src_lang = r.str("src_lang", std::string(corpus::kDefaultSourceLang));
  c.tgt_lang = r.str("tgt_lang", std::string(corpus::kDefaultTargetLang));
  if (c.src_lang == c.tgt_lang) throw ValidationError("config: src_lang and tgt_lang must differ");
  c.checkpoint_dir = r.str("checkpoint_dir");
  if (r.has("seed")) {
    if (!non_negative_integer(j["seed"])) throw ValidationError("config.seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  c.audit = r.flag("audit", true);

  const auto endpoints = r.sub("endpoints");
  for (const auto& [name, value] : endpoints.raw().items())
    c.endpoints.emplace(name, backends::endpoint_from_json(name, value));

  const auto stages = r.sub("stages");
  stages.only({"preprocess", "translate", "filter_similarity", "backtranslate", "filter_roundtrip"});

  const auto pre = stages.sub("preprocess");
  pre.only({"length_filter", "excluded_choice_counts", "rewrite"});
  c.preprocess.length_filter = pre.flag("length_filter", true);
  if (pre.has("excluded_choice_counts")) {
    const auto& arr = pre.raw()["excluded_choice_counts"];
    if (!arr.is_array()) throw ValidationError(pre.where() + ".excluded_choice_counts must be an array");
    c.preprocess.excluded_choice_counts.clear();
    for (const auto& v : arr) {
      if (!non_negative_integer(v)) throw ValidationError(pre.where() + ".excluded_choice_counts must hold non-negative integers");
      c.preprocess.excluded_choice_counts.insert(v.get<std::size_t>());
    }
  }
  const auto rw = pre.sub("rewrite");
  rw.only({"enabled", "endpoint", "instruction"});
  c.preprocess.rewrite.enabled = rw.flag("enabled", false);
  c.preprocess.rewrite.endpoint = rw.str("endpoint", "");
  c.preprocess.rewrite.instruction = rw.str("instruction", "");

  const auto tr = stages.sub("translate");
  tr.only({"endpoint"});
  c.translate_endpoint = tr.str("endpoint", "");

  const auto sim = stages.sub("filter_similarity");
  sim.only({"endpoint", "mode", "threshold", "reference"});
  c.similarity.endpoint = sim.str("endpoint", "");
  const auto sim_mode = sim.str("mode", "fixed");
  if (sim_mode == "fixed") {
    c.similarity.mode = SimilarityThresholdMode::fixed;
  } else if (sim_mode == "derive") {
    c.similarity.mode = SimilarityThresholdMode::derive;
  } else {
    throw ValidationError(sim.where() + ".mode must be fixed or derive");
  }
  c.similarity.threshold = sim.num("threshold", 0.68);
  if (!(c.similarity.threshold > -1.0 && c.similarity.threshold <= 1.0))
    throw ValidationError(sim.where() + ".threshold must lie in (-1, 1]");
  c.similarity.reference = sim.str("reference", "");

  const auto bt = stages.sub("backtranslate");
  bt.only({"endpoint"});
  c.backtranslate_endpoint = bt.str("endpoint", c.translate_endpoint);

  const auto rt = stages.sub("filter_roundtrip");
  rt.only({"mode", "mu_bleu", "mu_meteor"});
  c.roundtrip.mode = parse_threshold_mode(rt.str("mode", "data_mean"));
  c.roundtrip.mu_bleu = rt.num("mu_bleu", 0.0);
  c.roundtrip.mu_meteor = rt.num("mu_meteor", 0.0);
  if (c.roundtrip.mode == ThresholdMode::fixed && (!rt.has("mu_bleu") || !rt.has("mu_meteor")))
    throw ValidationError(rt.where() + ": fixed mode needs mu_bleu and mu_meteor");
  if (!(c.roundtrip.mu_bleu >= 0.0 && c.roundtrip.mu_bleu <= 100.0))
    throw ValidationError(rt.where() + ".mu_bleu must lie in [0, 100]");
  if (!(c.roundtrip.mu_meteor >= 0.0 && c.roundtrip.mu_meteor <= 1.0))
    throw ValidationError(rt.where() + ".mu_meteor must lie in [0, 1]");
  return c;
}

namespace {

Json read_config(const fs::path& path) {
  try {
    return Json::parse(jsonl::read_text(path));
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  } catch (const IoError& e) {
    throw ValidationError(std::string("cannot read config: ") + e.what());
  }
}

}  // namespace

PipelineConfig load_pipeline_config(const fs::path& path) {
  return pipeline_config_from_json(read_config(path), path.parent_path());
}

std::map<std::string, backends::BackendEndpoint> load_endpoints(const fs::path& path) {
  const auto j = read_config(path);
  if (!j.is_object() || !j.contains("endpoints") || !j["endpoints"].is_object())
    throw ValidationError(path.string() + ": no \"endpoints\" object");
  std::map<std::string, backends::BackendEndpoint> out;
  for (const auto& [name, value] : j["endpoints"].items()) out.emplace(name, backends::endpoint_from_json(name, value));
  return out;
}

Json to_json(const PipelineConfig& c) {
  Json j;
  j["task"] = std::string(corpus::to_string(c.task));
  j["dataset"] = c.dataset;
  j["src_lang"] = c.src_lang;
  j["tgt_lang"] = c.tgt_lang;
  j["checkpoint_dir"] = c.checkpoint_dir;
  j["seed"] = c.seed;
  j["audit"] = c.audit;
  Json endpoints = Json::object();
  for (const auto& [name, e] : c.endpoints) endpoints[name] = backends::to_json(e);
  j["endpoints"] = endpoints;

  Json stages;
  Json pre;
  pre["length_filter"] = c.preprocess.length_filter;
  pre["excluded_choice_counts"] = Json::array();
  for (auto n : c.preprocess.excluded_choice_counts) pre["excluded_choice_counts"].push_back(n);
  Json rw;
  rw["enabled"] = c.preprocess.rewrite.enabled;
  rw["endpoint"] = c.preprocess.rewrite.endpoint;
  rw["instruction"] = c.preprocess.rewrite.instruction;
  pre["rewrite"] = rw;
  stages["preprocess"] = pre;
  stages["translate"] = Json{{"endpoint", c.translate_endpoint}};
  Json sim;
  sim["endpoint"] = c.similarity.endpoint;
  sim["mode"] = c.similarity.mode == SimilarityThresholdMode::fixed ? "fixed" : "derive";
  sim["threshold"] = c.similarity.threshold;
  sim["reference"] = c.similarity.reference;
  stages["filter_similarity"] = sim;
  stages["backtranslate"] = Json{{"endpoint", c.backtranslate_endpoint}};
  Json rt;
  rt["mode"] = std::string(to_string(c.roundtrip.mode));
  rt["mu_bleu"] = c.roundtrip.mu_bleu;
  rt["mu_meteor"] = c.roundtrip.mu_meteor;
  stages["filter_roundtrip"] = rt;
  j["stages"] = stages;
  return j;
}

namespace {

void require_endpoint(const PipelineConfig& c, const std::string& name, backends::EndpointKind kind,
                      std::string_view stage) {
  if (name.empty()) throw ValidationError(std::string(stage) + ": no endpoint configured");
  const auto& e = c.endpoint(name);
  if (e.kind != kind)
    throw ValidationError(std::string(stage) + ": endpoint '" + name + "' is a " +
                          std::string(backends::to_string(e.kind)) + " endpoint, expected " +
                          std::string(backends::to_string(kind)));
}

}  // namespace

void validate_for(const PipelineConfig& c, std::span<const PipelineStep> steps) {
  using backends::EndpointKind;
  if (c.checkpoint_dir.empty()) throw ValidationError("config: checkpoint_dir is required");
  for (auto step : steps) {
    switch (step) {
      case PipelineStep::preprocess:
        if (!fs::is_regular_file(c.dataset_path()))
          throw ValidationError("dataset not found: " + c.dataset_path().string());
        if (c.preprocess.rewrite.enabled) {
          require_endpoint(c, c.preprocess.rewrite.endpoint, EndpointKind::chat, "preprocess.rewrite");
          if (c.preprocess.rewrite.instruction.empty())
            throw ValidationError("preprocess.rewrite: instruction is required when enabled");
        }
        break;
      case PipelineStep::translate:
        require_endpoint(c, c.translate_endpoint, EndpointKind::translate, "translate");
        break;
      case PipelineStep::filter_similarity:
        require_endpoint(c, c.similarity.endpoint, EndpointKind::embed, "filter_similarity");
        if (c.similarity.mode == SimilarityThresholdMode::derive) {
          if (c.similarity.reference.empty())
            throw ValidationError("filter_similarity: derive mode needs a reference corpus");
          if (!fs::is_regular_file(c.resolve(c.similarity.reference)))
            throw ValidationError("reference corpus not found: " + c.resolve(c.similarity.reference).string());
        }
        break;
      case PipelineStep::backtranslate:
        require_endpoint(c, c.backtranslate_endpoint, EndpointKind::translate, "backtranslate");
        break;
      case PipelineStep::filter_roundtrip:
        break;
    }
  }
}

}  // namespace cf::pipeline
