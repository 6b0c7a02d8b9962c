#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cf::corpus {

/// Sentiment labels: 0 = positive, 1 = negative.
inline constexpr int kPositive = 0;
inline constexpr int kNegative = 1;

inline constexpr std::string_view kDefaultSourceLang = "ita_Latn";
inline constexpr std::string_view kDefaultTargetLang = "lld_Latn";

struct SAEntry {
  std::string id;
  std::string text;
  int label = kPositive;

  bool operator==(const SAEntry&) const = default;
};

struct MCQAEntry {
  std::string id;
  std::string question;
  std::vector<std::string> choices;
  int answer = 0;  // 0-based index into choices

  bool operator==(const MCQAEntry&) const = default;
};

struct ParallelPair {
  std::string id;
  std::string src;
  std::string tgt;
  std::string src_lang;
  std::string tgt_lang;

  bool operator==(const ParallelPair&) const = default;
};

using SADataset = std::vector<SAEntry>;
using MCQADataset = std::vector<MCQAEntry>;
using ParallelCorpus = std::vector<ParallelPair>;

enum class DatasetKind { sa, mcqa, parallel };

using Dataset = std::variant<SADataset, MCQADataset, ParallelCorpus>;

std::string_view to_string(DatasetKind kind) noexcept;
/// Throws ValidationError on an unknown name.
DatasetKind parse_kind(std::string_view name);

DatasetKind kind_of(const Dataset& dataset) noexcept;
std::size_t size_of(const Dataset& dataset) noexcept;

/// Invariant checks. Strict mode applies the full invariants of freshly ingested data;
/// relaxed mode (used for machine-produced checkpoints) only checks structural ranges,
/// since a model can legitimately return empty or colliding text.
enum class Strictness { strict, relaxed };

/// Returns an empty string when valid, otherwise a description of the violation.
std::string validate(const SAEntry& e, Strictness s = Strictness::strict);
std::string validate(const MCQAEntry& e, Strictness s = Strictness::strict);
std::string validate(const ParallelPair& p, Strictness s = Strictness::strict);

}  // namespace cf::corpus
