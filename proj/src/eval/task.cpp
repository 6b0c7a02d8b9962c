#include "cf/eval/task.hpp"

#include <set>
#include <unordered_map>

#include "cf/common/error.hpp"

namespace cf::eval {

metrics::ClassificationScores evaluate_task(std::span<const int> preds, std::span<const int> golds,
                                            corpus::DatasetKind task) {
  switch (task) {
    case corpus::DatasetKind::sa:
      return metrics::classification_metrics(preds, golds, metrics::F1Mode::binary_positive,
                                             std::vector<int>{corpus::kPositive, corpus::kNegative},
                                             corpus::kPositive);
    case corpus::DatasetKind::mcqa:
      return metrics::classification_metrics(preds, golds, metrics::F1Mode::macro);
    case corpus::DatasetKind::parallel:
      break;
  }
  throw ValidationError("task scoring needs an sa or mcqa task");
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  for (const auto& [line, j] : jsonl::read_objects(path)) {
    if (!j.contains("id") || !j["id"].is_string()) throw SchemaError(path.string(), line, "missing string field 'id'");
    if (!j.contains("pred") || !j["pred"].is_number_integer())
      throw SchemaError(path.string(), line, "missing integer field 'pred'");
    out.push_back({j["id"].get<std::string>(), j["pred"].get<int>()});
  }
  return out;
}

namespace {

template <typename Entry, typename Gold>
metrics::ClassificationScores align(const std::vector<Prediction>& preds, const std::vector<Entry>& gold,
                                    Gold gold_of, corpus::DatasetKind kind) {
  std::unordered_map<std::string, int> by_id;
  for (const auto& p : preds)
    if (!by_id.emplace(p.id, p.pred).second) throw DataError("duplicate prediction for id '" + p.id + "'");

  std::vector<int> p;
  std::vector<int> g;
  std::set<std::string> missing;
  for (const auto& e : gold) {
    auto it = by_id.find(e.id);
    if (it == by_id.end()) {
      missing.insert(e.id);
      continue;
    }
    p.push_back(it->second);
    g.push_back(gold_of(e));
    by_id.erase(it);
  }
  if (!missing.empty() || !by_id.empty()) {
    std::string msg = "predictions and gold are not aligned by id;";
    if (!missing.empty()) {
      msg += " no prediction for:";
      for (const auto& id : missing) msg += " " + id;
      msg += ";";
    }
    if (!by_id.empty()) {
      std::set<std::string> extra;
      for (const auto& [id, _] : by_id) extra.insert(id);
      msg += " not in gold:";
      for (const auto& id : extra) msg += " " + id;
    }
    throw DataError(msg);
  }
  return evaluate_task(p, g, kind);
}

}  // namespace

metrics::ClassificationScores evaluate_task(const std::vector<Prediction>& preds, const corpus::Dataset& gold) {
  if (const auto* sa = std::get_if<corpus::SADataset>(&gold))
    return align(preds, *sa, [](const corpus::SAEntry& e) { return e.label; }, corpus::DatasetKind::sa);
  if (const auto* mcqa = std::get_if<corpus::MCQADataset>(&gold))
    return align(preds, *mcqa, [](const corpus::MCQAEntry& e) { return e.answer; }, corpus::DatasetKind::mcqa);
  throw ValidationError("gold dataset must be sa or mcqa");
}

Json to_json(const metrics::ClassificationScores& s) {
  Json j;
  j["balanced_accuracy"] = s.balanced_accuracy;
  j["f1"] = s.f1;
  Json recall = Json::object();
  for (const auto& [label, v] : s.per_class_recall) recall[std::to_string(label)] = v;
  Json f1 = Json::object();
  for (const auto& [label, v] : s.per_class_f1) f1[std::to_string(label)] = v;
  j["per_class_recall"] = recall;
  j["per_class_f1"] = f1;
  return j;
}

}  // namespace cf::eval
