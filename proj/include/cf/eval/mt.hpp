#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cf/common/jsonl.hpp"
#include "cf/corpus/types.hpp"

namespace cf::eval {

/// Metric identifiers of the MT table.
inline constexpr std::string_view kBleu = "bleu";
inline constexpr std::string_view kChrfPP = "chrf++";
inline constexpr std::string_view kRougeL = "rouge-l-f1";

/// Named test subsets. Every pair is oriented so that `src` is the input and `tgt` the
/// reference for the suite's direction.
struct EvalSuite {
  std::map<std::string, corpus::ParallelCorpus> subsets;
  std::string src_lang;
  std::string tgt_lang;
};

using ScoreRow = std::map<std::string, double>;
using SystemOutputs = std::map<std::string, std::vector<std::string>>;

struct EvalReport {
  std::string system;
  std::string src_lang;
  std::string tgt_lang;
  std::map<std::string, ScoreRow> per_subset;
  ScoreRow macro;
};

/// Per subset: corpus BLEU, corpus chrF++ and the mean sentence ROUGE-L F1, all 0-100.
ScoreRow score_subset(const corpus::ParallelCorpus& subset, const std::vector<std::string>& hyps);

/// Scores every subset (concurrently) and macro-averages. Throws ValidationError naming a
/// subset without outputs or with a misaligned output list.
EvalReport evaluate_mt(const EvalSuite& suite, const SystemOutputs& outputs, std::string system = {});

/// Unweighted mean over subsets of each metric present in every row.
ScoreRow macro_average(const std::map<std::string, ScoreRow>& per_subset);

Json to_json(const EvalReport& report);

/// Fixed-width plain-text table: one row per subset, then the macro row.
std::string render_table(const EvalReport& report);

/// Manifest: {"subsets": {"t1": "path.jsonl", ...}, "direction": ["ita_Latn", "lld_Latn"]}.
/// Subset files are parallel JSONL; pairs stored in the opposite direction are swapped.
EvalSuite load_suite(const std::filesystem::path& manifest);

/// One hypothesis per line; blank lines are empty hypotheses.
std::vector<std::string> read_hypotheses(const std::filesystem::path& path);

}  // namespace cf::eval
