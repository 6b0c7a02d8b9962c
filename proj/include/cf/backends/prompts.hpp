#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cf/corpus/types.hpp"

namespace cf::backends {

enum class FslTask { mt, sa, mcqa };

std::string_view to_string(FslTask task) noexcept;
FslTask parse_fsl_task(std::string_view name);

struct TranslationExample {
  std::string source;
  std::string target;
};

/// Display names used inside prompts.
struct PromptLanguages {
  std::string source = "Italian";
  std::string target = "Ladin";
  std::string variant = "Val Badia";  // empty: no variant qualifier
};

enum class ExemplarSampling {
  fixed,     // the first `shots` exemplars, identical for every batch
  resample,  // a seeded draw per batch index
};

struct FslExampleBank {
  FslTask task = FslTask::mt;
  std::variant<std::vector<TranslationExample>, corpus::SADataset, corpus::MCQADataset> examples;
  std::size_t shots = 0;
  ExemplarSampling sampling = ExemplarSampling::fixed;
  std::uint64_t seed = 0;
  PromptLanguages languages;

  std::size_t size() const noexcept;
};

/// Queries: source sentences (mt), review texts (sa) or questions with choices (mcqa).
using FslQueries = std::variant<std::vector<std::string>, corpus::MCQADataset>;

struct FslPromptOptions {
  /// Required number of mt queries; nullopt accepts any non-zero count.
  std::optional<std::size_t> mt_query_count = 15;
  std::uint64_t batch_index = 0;
};

/// Verbatim instruction lines of each template.
std::string fsl_header(const FslExampleBank& bank);
std::string fsl_footer(const FslExampleBank& bank, std::size_t query_count);

/// Header, exemplar block, footer forbidding extra text, then the query block with empty
/// answer slots. Deterministic in (bank, queries, options).
/// Throws ValidationError on an empty bank, shots > bank size, a task/query mismatch or
/// a wrong mt query count.
std::string build_fsl_prompt(const FslExampleBank& bank, const FslQueries& queries,
                             const FslPromptOptions& options = {});

/// Indices of the exemplars used for a batch.
std::vector<std::size_t> select_exemplars(const FslExampleBank& bank, std::uint64_t batch_index);

/// Python-style repr of a string: single quotes unless the text contains a single quote and
/// no double quote.
std::string python_repr(std::string_view text);

}  // namespace cf::backends
