#include "cf/pipeline/records.hpp"

#include <cmath>
#include <unordered_set>

#include "cf/common/error.hpp"

namespace cf::pipeline {

std::string_view to_string(FilterStage stage) noexcept {
  return stage == FilterStage::similarity ? "similarity" : "roundtrip";
}

std::string_view to_string(ThresholdMode mode) noexcept {
  return mode == ThresholdMode::data_mean ? "data_mean" : "fixed";
}

ThresholdMode parse_threshold_mode(std::string_view name) {
  if (name == "data_mean") return ThresholdMode::data_mean;
  if (name == "fixed") return ThresholdMode::fixed;
  throw ValidationError("unknown threshold mode '" + std::string(name) + "' (expected data_mean or fixed)");
}

bool meets_thresholds(const ScoreList& scores, const ScoreList& thresholds) {
  for (const auto& [metric, threshold] : thresholds) {
    bool found = false;
    for (const auto& [m, score] : scores) {
      if (m != metric) continue;
      found = true;
      if (!(score >= threshold)) return false;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

Json scores_json(const ScoreList& list) {
  Json j = Json::object();
  for (const auto& [k, v] : list) j[k] = v;
  return j;
}

ScoreList scores_from(const Json& j, const std::string& where) {
  if (!j.is_object()) throw DataError(where + ": expected an object of scores");
  ScoreList out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw DataError(where + ": score '" + k + "' is not a number");
    out.emplace_back(k, v.get<double>());
  }
  return out;
}

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw DataError(where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

Json to_json(const RoundTripRecord& r) {
  Json j;
  j["id"] = r.id;
  j["src_original"] = r.src_original;
  j["fwd_translation"] = r.fwd_translation;
  j["back_translation"] = r.back_translation;
  j[std::string(kBleu)] = r.bleu;
  j[std::string(kMeteor)] = r.meteor;
  j[std::string(kCosine)] = r.cosine;
  return j;
}

Json to_json(const FilterDecision& d) {
  Json j;
  j["id"] = d.id;
  j["stage"] = std::string(to_string(d.stage));
  j["scores"] = scores_json(d.scores);
  j["thresholds"] = scores_json(d.thresholds);
  j["passed"] = d.passed;
  if (!d.reason.empty()) j["reason"] = d.reason;
  return j;
}

Json to_json(const RoundTripThresholds& t) {
  Json j;
  j["mode"] = std::string(to_string(t.mode));
  j[std::string(kBleu)] = t.mu_bleu;
  j[std::string(kMeteor)] = t.mu_meteor;
  return j;
}

RoundTripThresholds thresholds_from_json(const Json& j) {
  RoundTripThresholds t;
  t.mode = parse_threshold_mode(field<std::string>(j, "mode", "thresholds"));
  t.mu_bleu = field<double>(j, std::string(kBleu).c_str(), "thresholds");
  t.mu_meteor = field<double>(j, std::string(kMeteor).c_str(), "thresholds");
  return t;
}

void save_records(const std::vector<RoundTripRecord>& records, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.push_back(jsonl::dump(to_json(r)));
  jsonl::write_lines(path, lines);
}

std::vector<RoundTripRecord> load_records(const std::filesystem::path& path) {
  std::vector<RoundTripRecord> out;
  std::unordered_set<std::string> ids;
  for (const auto& [line, j] : jsonl::read_objects(path)) {
    const std::string where = path.string() + ":" + std::to_string(line);
    RoundTripRecord r;
    r.id = field<std::string>(j, "id", where);
    r.src_original = field<std::string>(j, "src_original", where);
    r.fwd_translation = field<std::string>(j, "fwd_translation", where);
    r.back_translation = field<std::string>(j, "back_translation", where);
    r.bleu = field<double>(j, "bleu", where);
    r.meteor = field<double>(j, "meteor-exact", where);
    r.cosine = field<double>(j, "cosine", where);
    if (!(r.bleu >= 0.0 && r.bleu <= 100.0)) throw SchemaError(path.string(), line, "bleu outside [0, 100]");
    if (!(r.meteor >= 0.0 && r.meteor <= 1.0)) throw SchemaError(path.string(), line, "meteor outside [0, 1]");
    if (!(r.cosine >= -1.0 && r.cosine <= 1.0)) throw SchemaError(path.string(), line, "cosine outside [-1, 1]");
    if (!ids.insert(r.id).second) throw SchemaError(path.string(), line, "duplicate id '" + r.id + "'");
    out.push_back(std::move(r));
  }
  return out;
}

void save_decisions(const std::vector<FilterDecision>& decisions, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(decisions.size());
  for (const auto& d : decisions) lines.push_back(jsonl::dump(to_json(d)));
  jsonl::write_lines(path, lines);
}

std::vector<FilterDecision> load_decisions(const std::filesystem::path& path) {
  std::vector<FilterDecision> out;
  for (const auto& [line, j] : jsonl::read_objects(path)) {
    const std::string where = path.string() + ":" + std::to_string(line);
    FilterDecision d;
    d.id = field<std::string>(j, "id", where);
    const auto stage = field<std::string>(j, "stage", where);
    if (stage == "similarity") {
      d.stage = FilterStage::similarity;
    } else if (stage == "roundtrip") {
      d.stage = FilterStage::roundtrip;
    } else {
      throw SchemaError(path.string(), line, "unknown stage '" + stage + "'");
    }
    d.scores = scores_from(j.at("scores"), where);
    d.thresholds = scores_from(j.at("thresholds"), where);
    d.passed = field<bool>(j, "passed", where);
    if (j.contains("reason")) d.reason = field<std::string>(j, "reason", where);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace cf::pipeline
