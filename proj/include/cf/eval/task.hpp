#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"
#include "cf/metrics/classification.hpp"

namespace cf::eval {

/// sa: balanced accuracy and F1 of the positive class over labels {0, 1}.
/// mcqa: balanced accuracy and macro F1 over the observed answer indices.
metrics::ClassificationScores evaluate_task(std::span<const int> preds, std::span<const int> golds,
                                            corpus::DatasetKind task);

struct Prediction {
  std::string id;
  int pred = 0;
};

/// JSONL of {"id": ..., "pred": n}.
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

/// Aligns predictions with a gold SA or MCQA dataset by id. Throws DataError listing ids
/// present on one side only.
metrics::ClassificationScores evaluate_task(const std::vector<Prediction>& preds, const corpus::Dataset& gold);

Json to_json(const metrics::ClassificationScores& scores);

}  // namespace cf::eval
