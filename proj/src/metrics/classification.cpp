#include "cf/metrics/classification.hpp"

#include <set>
#include <string>

#include "cf/common/error.hpp"
#include "cf/common/log.hpp"

namespace cf::metrics {

namespace {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double f1() const {
    if (tp == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    return 2.0 * precision * recall / (precision + recall);
  }
};

}  // namespace

ClassificationScores classification_metrics(std::span<const int> preds, std::span<const int> golds,
                                             F1Mode mode, std::optional<std::vector<int>> labels,
                                             int positive_label) {
  if (preds.size() != golds.size())
    throw ValidationError("classification: " + std::to_string(preds.size()) + " predictions vs " +
                          std::to_string(golds.size()) + " gold labels");
  if (golds.empty()) throw ValidationError("classification: empty input");

  std::set<int> label_set;
  if (labels) {
    label_set.insert(labels->begin(), labels->end());
  } else {
    label_set.insert(golds.begin(), golds.end());
    label_set.insert(preds.begin(), preds.end());
  }

  std::map<int, Confusion> confusion;
  std::map<int, std::size_t> support;
  for (int label : label_set) confusion[label];
  for (std::size_t i = 0; i < golds.size(); ++i) {
    ++support[golds[i]];
    if (preds[i] == golds[i]) {
      ++confusion[golds[i]].tp;
    } else {
      ++confusion[golds[i]].fn;
      ++confusion[preds[i]].fp;
    }
  }

  ClassificationScores scores;
  double recall_sum = 0.0;
  for (int label : label_set) {
    const auto& c = confusion[label];
    scores.per_class_f1[label] = c.f1();
    const auto it = support.find(label);
    if (it == support.end()) {
      if (labels) logger()->warn("class {} has no gold examples; excluded from balanced accuracy", label);
      continue;
    }
    const double recall = static_cast<double>(c.tp) / static_cast<double>(it->second);
    scores.per_class_recall[label] = recall;
    recall_sum += recall;
  }
  for (const auto& [label, _] : support) {
    if (!label_set.contains(label))
      throw ValidationError("gold label " + std::to_string(label) + " is outside the declared label set");
  }
  scores.balanced_accuracy = recall_sum / static_cast<double>(scores.per_class_recall.size());

  if (mode == F1Mode::binary_positive) {
    scores.f1 = confusion[positive_label].f1();
  } else {
    double sum = 0.0;
    for (const auto& [_, f1] : scores.per_class_f1) sum += f1;
    scores.f1 = sum / static_cast<double>(scores.per_class_f1.size());
  }
  return scores;
}

}  // namespace cf::metrics
