#include "cf/eval/mt.hpp"

#include <fmt/format.h>

#include <future>

#include "cf/common/error.hpp"
#include "cf/corpus/io.hpp"
#include "cf/metrics/bleu.hpp"
#include "cf/metrics/chrf.hpp"
#include "cf/metrics/rouge.hpp"

namespace cf::eval {

ScoreRow score_subset(const corpus::ParallelCorpus& subset, const std::vector<std::string>& hyps) {
  if (subset.empty()) throw ValidationError("cannot score an empty subset");
  if (hyps.size() != subset.size())
    throw ValidationError(fmt::format("{} hypotheses for {} references", hyps.size(), subset.size()));
  std::vector<std::string> refs;
  refs.reserve(subset.size());
  for (const auto& p : subset) refs.push_back(p.tgt);

  double rouge = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) rouge += metrics::rouge_l(hyps[i], refs[i]);

  ScoreRow row;
  row[std::string(kBleu)] = metrics::corpus_bleu(hyps, refs);
  row[std::string(kChrfPP)] = metrics::corpus_chrf_pp(hyps, refs);
  row[std::string(kRougeL)] = rouge / static_cast<double>(refs.size());
  return row;
}

ScoreRow macro_average(const std::map<std::string, ScoreRow>& per_subset) {
  if (per_subset.empty()) throw ValidationError("macro average over no subsets");
  ScoreRow macro;
  for (const auto& [metric, _] : per_subset.begin()->second) {
    double sum = 0.0;
    bool everywhere = true;
    for (const auto& [name, row] : per_subset) {
      auto it = row.find(metric);
      if (it == row.end()) {
        everywhere = false;
        break;
      }
      sum += it->second;
    }
    if (everywhere) macro[metric] = sum / static_cast<double>(per_subset.size());
  }
  return macro;
}

EvalReport evaluate_mt(const EvalSuite& suite, const SystemOutputs& outputs, std::string system) {
  if (suite.subsets.empty()) throw ValidationError("evaluation suite has no subsets");
  for (const auto& [name, subset] : suite.subsets) {
    auto it = outputs.find(name);
    if (it == outputs.end()) throw ValidationError("no system outputs for subset '" + name + "'");
    if (it->second.size() != subset.size())
      throw ValidationError(fmt::format("subset '{}': {} outputs for {} sentences", name, it->second.size(),
                                        subset.size()));
  }
  std::map<std::string, std::future<ScoreRow>> jobs;
  for (const auto& [name, subset] : suite.subsets) {
    const auto* s = &subset;
    const auto* h = &outputs.at(name);
    jobs.emplace(name, std::async(std::launch::async, [s, h] { return score_subset(*s, *h); }));
  }
  EvalReport report;
  report.system = std::move(system);
  report.src_lang = suite.src_lang;
  report.tgt_lang = suite.tgt_lang;
  for (auto& [name, job] : jobs) report.per_subset[name] = job.get();
  report.macro = macro_average(report.per_subset);
  return report;
}

Json to_json(const EvalReport& report) {
  Json j;
  j["system"] = report.system;
  j["direction"] = Json::array({report.src_lang, report.tgt_lang});
  Json subsets = Json::object();
  for (const auto& [name, row] : report.per_subset) subsets[name] = Json(row);
  j["per_subset"] = subsets;
  j["macro"] = Json(report.macro);
  return j;
}

std::string render_table(const EvalReport& report) {
  std::vector<std::string> metrics;
  for (const auto& [m, _] : report.macro) metrics.push_back(m);
  std::size_t name_width = 5;
  for (const auto& [name, _] : report.per_subset) name_width = std::max(name_width, name.size());

  std::string out = fmt::format("{:<{}}", "", name_width);
  for (const auto& m : metrics) out += fmt::format("  {:>10}", m);
  out += '\n';
  auto row = [&](const std::string& name, const ScoreRow& r) {
    out += fmt::format("{:<{}}", name, name_width);
    for (const auto& m : metrics) out += fmt::format("  {:>10.2f}", r.at(m));
    out += '\n';
  };
  for (const auto& [name, r] : report.per_subset) row(name, r);
  row("macro", report.macro);
  return out;
}

EvalSuite load_suite(const std::filesystem::path& manifest) {
  Json j;
  try {
    j = Json::parse(jsonl::read_text(manifest));
  } catch (const Json::parse_error& e) {
    throw ValidationError(manifest.string() + ": invalid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("subsets") || !j["subsets"].is_object() || j["subsets"].empty())
    throw ValidationError(manifest.string() + ": expected a non-empty \"subsets\" object");
  if (!j.contains("direction") || !j["direction"].is_array() || j["direction"].size() != 2 ||
      !j["direction"][0].is_string() || !j["direction"][1].is_string())
    throw ValidationError(manifest.string() + ": \"direction\" must be [src_lang, tgt_lang]");

  EvalSuite suite;
  suite.src_lang = j["direction"][0].get<std::string>();
  suite.tgt_lang = j["direction"][1].get<std::string>();
  for (const auto& [name, value] : j["subsets"].items()) {
    if (!value.is_string()) throw ValidationError(manifest.string() + ": subset '" + name + "' needs a path");
    std::filesystem::path p(value.get<std::string>());
    if (p.is_relative()) p = manifest.parent_path() / p;
    auto pairs = corpus::load_parallel(p);
    if (pairs.empty()) throw ValidationError("subset '" + name + "' is empty");
    for (auto& pair : pairs) {
      if (pair.src_lang == suite.src_lang && pair.tgt_lang == suite.tgt_lang) continue;
      if (pair.src_lang == suite.tgt_lang && pair.tgt_lang == suite.src_lang) {
        std::swap(pair.src, pair.tgt);
        std::swap(pair.src_lang, pair.tgt_lang);
        continue;
      }
      throw DataError(p.string() + ": pair '" + pair.id + "' is " + pair.src_lang + "->" + pair.tgt_lang +
                      ", suite direction is " + suite.src_lang + "->" + suite.tgt_lang);
    }
    suite.subsets.emplace(name, std::move(pairs));
  }
  return suite;
}

std::vector<std::string> read_hypotheses(const std::filesystem::path& path) {
  const auto text = jsonl::read_text(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace cf::eval
