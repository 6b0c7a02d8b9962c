#pragma once

#include <filesystem>
#include <string>

#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"

namespace cf::corpus {

struct LoadOptions {
  Strictness strictness = Strictness::strict;
};

/// Loads a JSONL dataset of the declared kind. Records keep file order; a missing id is
/// replaced by the zero-padded 1-based line number. Errors carry the offending line.
Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind, LoadOptions options = {});

SADataset load_sa(const std::filesystem::path& path, LoadOptions options = {});
MCQADataset load_mcqa(const std::filesystem::path& path, LoadOptions options = {});
ParallelCorpus load_parallel(const std::filesystem::path& path, LoadOptions options = {});

void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Fixed-key-order record encodings shared with checkpoints.
Json to_json(const SAEntry& e);
Json to_json(const MCQAEntry& e);
Json to_json(const ParallelPair& p);

std::string auto_id(std::size_t line_number);

}  // namespace cf::corpus
