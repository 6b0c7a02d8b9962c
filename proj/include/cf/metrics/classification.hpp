#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace cf::metrics {

enum class F1Mode {
  binary_positive,  // F1 of the positive class (label 0)
  macro,            // unweighted mean of per-class F1
};

struct ClassificationScores {
  double balanced_accuracy = 0.0;  // mean of per_class_recall
  double f1 = 0.0;
  std::map<int, double> per_class_recall;
  std::map<int, double> per_class_f1;
};

/// Balanced accuracy over the classes that occur in `golds`, plus F1 in the requested mode.
/// `labels` declares the label set; it defaults to the union of observed labels. A declared
/// label absent from `golds` is left out of balanced accuracy with a warning.
/// Throws ValidationError on length mismatch or empty input.
ClassificationScores classification_metrics(std::span<const int> preds, std::span<const int> golds,
                                             F1Mode mode,
                                             std::optional<std::vector<int>> labels = std::nullopt,
                                             int positive_label = 0);

}  // namespace cf::metrics
