#include "cf/corpus/stats.hpp"

#include "cf/common/error.hpp"
#include "cf/common/utf8.hpp"

namespace cf::corpus {

namespace {

struct Accumulator {
  std::size_t words = 0;
  std::size_t chars = 0;

  void add(std::string_view text) {
    words += utf8::count_words(text);
    chars += utf8::count_chars(text);
  }

  TextAverages mean(std::size_t n) const {
    return {static_cast<double>(words) / static_cast<double>(n),
            static_cast<double>(chars) / static_cast<double>(n)};
  }
};

std::string join_choices(const std::vector<std::string>& choices) {
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += ' ';
    out += choices[i];
  }
  return out;
}

}  // namespace

CorpusStats compute_corpus_stats(const Dataset& dataset) {
  const std::size_t n = size_of(dataset);
  if (n == 0) throw ValidationError("cannot compute statistics of an empty dataset");

  CorpusStats stats;
  stats.entry_count = n;
  Accumulator entry;

  if (const auto* sa = std::get_if<SADataset>(&dataset)) {
    for (const auto& e : *sa) {
      entry.add(e.text);
      ++stats.label_counts[e.label];
    }
  } else if (const auto* mcqa = std::get_if<MCQADataset>(&dataset)) {
    Accumulator question;
    Accumulator choices;
    for (const auto& e : *mcqa) {
      const auto joined = join_choices(e.choices);
      question.add(e.question);
      choices.add(joined);
      entry.add(e.question + " " + joined);
      ++stats.choice_count_freq[e.choices.size()];
    }
    stats.question = question.mean(n);
    stats.choices = choices.mean(n);
  } else {
    Accumulator src;
    Accumulator tgt;
    for (const auto& p : std::get<ParallelCorpus>(dataset)) {
      src.add(p.src);
      tgt.add(p.tgt);
      entry.add(p.src);
    }
    stats.src = src.mean(n);
    stats.tgt = tgt.mean(n);
  }

  const auto avg = entry.mean(n);
  stats.avg_words_per_entry = avg.words;
  stats.avg_chars_per_entry = avg.chars;
  return stats;
}

Json to_json(const CorpusStats& stats, DatasetKind kind) {
  Json j;
  j["kind"] = std::string(to_string(kind));
  j["entry_count"] = stats.entry_count;
  if (kind != DatasetKind::parallel) {
    j["avg_words_per_entry"] = stats.avg_words_per_entry;
    j["avg_chars_per_entry"] = stats.avg_chars_per_entry;
  }
  if (kind == DatasetKind::sa) {
    auto count = [&](int label) {
      auto it = stats.label_counts.find(label);
      return it == stats.label_counts.end() ? std::size_t{0} : it->second;
    };
    j["positive_label_count"] = count(kPositive);
    j["negative_label_count"] = count(kNegative);
    Json labels = Json::object();
    for (const auto& [label, c] : stats.label_counts) labels[std::to_string(label)] = c;
    j["label_counts"] = labels;
  }
  if (kind == DatasetKind::mcqa) {
    j["avg_words_per_question"] = stats.question->words;
    j["avg_chars_per_question"] = stats.question->chars;
    j["avg_words_per_choices"] = stats.choices->words;
    j["avg_chars_per_choices"] = stats.choices->chars;
    Json freq = Json::object();
    for (const auto& [n, c] : stats.choice_count_freq) freq[std::to_string(n)] = c;
    j["choice_count_freq"] = freq;
  }
  if (kind == DatasetKind::parallel) {
    j["avg_words_per_src"] = stats.src->words;
    j["avg_chars_per_src"] = stats.src->chars;
    j["avg_words_per_tgt"] = stats.tgt->words;
    j["avg_chars_per_tgt"] = stats.tgt->chars;
  }
  return j;
}

}  // namespace cf::corpus
