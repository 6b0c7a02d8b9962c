#pragma once

#include <cstddef>
#include <set>

#include "cf/corpus/types.hpp"

namespace cf::corpus {

struct LengthFilterResult {
  SADataset retained;
  std::size_t cutoff = 0;  // words; entries with count <= cutoff survive
};

/// Keeps entries whose word count does not exceed the nearest-rank 75th percentile
/// (the ceil(0.75 n)-th smallest count). Order is preserved. Throws on empty input.
LengthFilterResult q3_length_filter(const SADataset& dataset);

/// Keeps entries with at most `cutoff` words. Idempotent for a fixed cutoff, which is how a
/// recorded cutoff is re-applied. Recomputing the quantile on already-filtered data is not
/// idempotent in general: it can lower the cutoff again.
SADataset apply_length_cutoff(const SADataset& dataset, std::size_t cutoff);

/// Nearest-rank quantile of `values` for q in (0, 1].
std::size_t nearest_rank(std::vector<std::size_t> values, double q);

inline const std::set<std::size_t> kDefaultExcludedChoiceCounts{2, 6};

MCQADataset drop_choice_counts(const MCQADataset& dataset,
                               const std::set<std::size_t>& excluded = kDefaultExcludedChoiceCounts);

}  // namespace cf::corpus
