#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"

namespace cf::corpus {

struct TextAverages {
  double words = 0.0;
  double chars = 0.0;
};

/// Descriptive statistics in the shape of the published dataset summaries.
/// Words are maximal runs of non-whitespace; characters are scalar values including spaces.
struct CorpusStats {
  std::size_t entry_count = 0;
  double avg_words_per_entry = 0.0;
  double avg_chars_per_entry = 0.0;
  std::map<int, std::size_t> label_counts;        // SA only
  std::map<std::size_t, std::size_t> choice_count_freq;  // MCQA only
  std::optional<TextAverages> question;          // MCQA only
  std::optional<TextAverages> choices;           // MCQA only, choices joined by a space
  std::optional<TextAverages> src;               // parallel only
  std::optional<TextAverages> tgt;               // parallel only
};

/// Throws ValidationError on an empty dataset.
CorpusStats compute_corpus_stats(const Dataset& dataset);

Json to_json(const CorpusStats& stats, DatasetKind kind);

}  // namespace cf::corpus
