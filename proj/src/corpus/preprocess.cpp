#include "cf/corpus/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "cf/common/error.hpp"
#include "cf/common/utf8.hpp"

namespace cf::corpus {

std::size_t nearest_rank(std::vector<std::size_t> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw ValidationError("quantile must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  // ceil(q * n) with q = 3/4 evaluated exactly for the common case
  std::size_t rank = q == 0.75 ? (3 * n + 3) / 4
                               : static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return values[rank - 1];
}

LengthFilterResult q3_length_filter(const SADataset& dataset) {
  if (dataset.empty()) throw ValidationError("length filter needs a non-empty dataset");
  std::vector<std::size_t> counts;
  counts.reserve(dataset.size());
  for (const auto& e : dataset) counts.push_back(utf8::count_words(e.text));

  LengthFilterResult result;
  result.cutoff = nearest_rank(counts, 0.75);
  for (std::size_t i = 0; i < dataset.size(); ++i)
    if (counts[i] <= result.cutoff) result.retained.push_back(dataset[i]);
  return result;
}

SADataset apply_length_cutoff(const SADataset& dataset, std::size_t cutoff) {
  SADataset out;
  std::copy_if(dataset.begin(), dataset.end(), std::back_inserter(out),
               [&](const SAEntry& e) { return utf8::count_words(e.text) <= cutoff; });
  return out;
}

MCQADataset drop_choice_counts(const MCQADataset& dataset, const std::set<std::size_t>& excluded) {
  MCQADataset out;
  std::copy_if(dataset.begin(), dataset.end(), std::back_inserter(out),
               [&](const MCQAEntry& e) { return !excluded.contains(e.choices.size()); });
  return out;
}

}  // namespace cf::corpus
