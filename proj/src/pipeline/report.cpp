#include "cf/pipeline/report.hpp"

#include <algorithm>
#include <cmath>

#include "cf/common/error.hpp"

namespace cf::pipeline {

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw ValidationError("histogram needs bins > 0 and hi > lo");
  Histogram h{lo, hi, std::vector<std::size_t>(bins, 0), 0};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) {
      ++h.out_of_range;
      continue;
    }
    auto k = static_cast<std::size_t>(std::floor((v - lo) / width));
    h.counts[std::min(k, bins - 1)]++;
  }
  return h;
}

Json to_json(const Histogram& h) {
  Json j;
  j["lo"] = h.lo;
  j["hi"] = h.hi;
  j["counts"] = h.counts;
  j["out_of_range"] = h.out_of_range;
  return j;
}

Json to_json(const StageCounts& c) {
  Json j;
  j["input"] = c.input;
  j["after_preprocess"] = c.after_preprocess;
  j["after_filter1"] = c.after_filter1;
  j["after_filter2"] = c.after_filter2;
  return j;
}

namespace {

std::size_t count_passed(const std::vector<FilterDecision>& d) {
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const auto& x) { return x.passed; }));
}

double score_of(const FilterDecision& d, std::string_view metric) {
  for (const auto& [m, v] : d.scores)
    if (m == metric) return v;
  throw DataError("decision for '" + d.id + "' has no " + std::string(metric) + " score");
}

Json decision_summary(const std::vector<FilterDecision>& d) {
  Json j;
  const auto passed = count_passed(d);
  const auto unscored = std::count_if(d.begin(), d.end(), [](const auto& x) { return !x.reason.empty(); });
  j["total"] = d.size();
  j["passed"] = passed;
  j["failed"] = d.size() - passed;
  j["failed_unscored"] = unscored;
  return j;
}

}  // namespace

Json build_report(const ReportInputs& in) {
  const auto& sim = *in.similarity;
  const auto& records = *in.records;
  const auto& rt = *in.roundtrip;

  StageCounts counts;
  counts.input = in.preprocess.at("input_count").get<std::size_t>();
  counts.after_preprocess = in.preprocess.at("after_preprocess").get<std::size_t>();
  counts.after_filter1 = count_passed(sim);
  counts.after_filter2 = count_passed(rt);

  if (sim.size() != counts.after_preprocess)
    throw DataError("similarity decisions (" + std::to_string(sim.size()) + ") do not cover the " +
                    std::to_string(counts.after_preprocess) + " preprocessed entries");
  if (records.size() != counts.after_filter1 || rt.size() != counts.after_filter1)
    throw DataError("round-trip records/decisions do not match the Filtering I survivors");
  if (!(counts.input >= counts.after_preprocess && counts.after_preprocess >= counts.after_filter1 &&
        counts.after_filter1 >= counts.after_filter2))
    throw DataError("stage counts are not monotone");

  std::vector<double> cosines;
  for (const auto& d : sim)
    if (d.reason.empty()) cosines.push_back(score_of(d, kCosine));
  std::vector<double> bleu;
  std::vector<double> meteor;
  for (const auto& r : records) {
    bleu.push_back(r.bleu);
    meteor.push_back(r.meteor);
  }

  const auto& config = *in.config;
  Json j;
  j["task"] = std::string(corpus::to_string(config.task));
  j["src_lang"] = config.src_lang;
  j["tgt_lang"] = config.tgt_lang;
  j["stage_counts"] = to_json(counts);
  j["preprocess"] = in.preprocess;

  Json thresholds;
  Json similarity;
  similarity["mode"] = config.similarity.mode == SimilarityThresholdMode::fixed ? "fixed" : "derive";
  similarity[std::string(kCosine)] = in.similarity_threshold;
  thresholds["similarity"] = similarity;
  thresholds["roundtrip"] = in.thresholds ? to_json(*in.thresholds) : Json(nullptr);
  j["thresholds"] = thresholds;

  Json decisions;
  decisions["similarity"] = decision_summary(sim);
  decisions["roundtrip"] = decision_summary(rt);
  j["decisions"] = decisions;

  Json hist;
  hist[std::string(kCosine)] = to_json(make_histogram(cosines, -1.0, 1.0, 20));
  hist[std::string(kBleu)] = to_json(make_histogram(bleu, 0.0, 100.0, 10));
  hist[std::string(kMeteor)] = to_json(make_histogram(meteor, 0.0, 1.0, 10));
  j["histograms"] = hist;

  j["config"] = to_json(config);
  return j;
}

}  // namespace cf::pipeline
