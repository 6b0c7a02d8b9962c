#include "cf/backends/prompts.hpp"

#include <numeric>
#include <random>

#include "cf/common/error.hpp"
#include "cf/common/jsonl.hpp"

namespace cf::backends {

std::string_view to_string(FslTask task) noexcept {
  switch (task) {
    case FslTask::mt: return "mt";
    case FslTask::sa: return "sa";
    case FslTask::mcqa: return "mcqa";
  }
  return "?";
}

FslTask parse_fsl_task(std::string_view name) {
  if (name == "mt") return FslTask::mt;
  if (name == "sa") return FslTask::sa;
  if (name == "mcqa") return FslTask::mcqa;
  throw ValidationError("unknown few-shot task '" + std::string(name) + "'");
}

std::size_t FslExampleBank::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, examples);
}

namespace {

std::string language_phrase(const PromptLanguages& l) {
  return l.variant.empty() ? l.target : l.target + " (" + l.variant + " variant)";
}

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string choices_list(const std::vector<std::string>& choices) {
  std::string out = "[";
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += ", ";
    out += python_repr(choices[i]);
  }
  out += "]";
  return out;
}

std::string braced(const std::vector<std::string>& items) {
  std::string out = "{\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += items[i];
    out += i + 1 < items.size() ? ",\n" : "\n";
  }
  out += "}";
  return out;
}

std::string mt_block(const PromptLanguages& l, const std::vector<std::pair<std::string, std::string>>& rows) {
  Json translations = Json::array();
  for (const auto& [src, tgt] : rows) {
    Json row;
    row[l.source] = src;
    row[l.target] = tgt;
    translations.push_back(row);
  }
  Json doc;
  doc["translations"] = translations;
  return doc.dump(4, ' ', false, Json::error_handler_t::replace);
}

std::string sa_item(std::string_view text, std::optional<int> label) {
  return "[review: " + quoted(text) + ", label: " + (label ? std::to_string(*label) : std::string()) + "]";
}

std::string mcqa_item(const corpus::MCQAEntry& e, bool with_answer) {
  return "[question: " + e.question + ", choices: " + choices_list(e.choices) +
         ", answer: " + (with_answer ? std::to_string(e.answer) : std::string()) + "]";
}

}  // namespace

std::string python_repr(std::string_view text) {
  const bool has_single = text.find('\'') != std::string_view::npos;
  const bool has_double = text.find('"') != std::string_view::npos;
  const char q = has_single && !has_double ? '"' : '\'';
  std::string out(1, q);
  for (char c : text) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == q) {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  out.push_back(q);
  return out;
}

std::string fsl_header(const FslExampleBank& bank) {
  const auto& l = bank.languages;
  switch (bank.task) {
    case FslTask::mt:
      return "Here are examples of translations in a JSON format between " + l.source + " and " + l.target +
             (l.variant.empty() ? std::string(":") : " with the " + l.variant + " variant:");
    case FslTask::sa:
      return "Below are Tripadvisor reviews in " + language_phrase(l) + " along with their sentiment labels:";
    case FslTask::mcqa:
      return "Below are multiple-choice questions in " + language_phrase(l) +
             " with 3, 4, or 5 answer choices. The correct answer is explicitly provided as an id number "
             "corresponding to the order of the choices:";
  }
  return {};
}

std::string fsl_footer(const FslExampleBank& bank, std::size_t n) {
  const auto& l = bank.languages;
  const std::string count = std::to_string(n);
  switch (bank.task) {
    case FslTask::mt:
      return "Please provide the translation of the following " + count + " entries in the JSON format, filling the empty '" +
             l.target + "' fields for each entry. Do not include any additional explanations or text:";
    case FslTask::sa:
      return "Please classify the sentiment for the following " + count + " Tripadvisor reviews in " +
             language_phrase(l) +
             " as either 0 (Positive) or 1 (Negative). Fill in the empty 'label' fields with only 0 or 1. "
             "Respond with the sentiment labels in list format like this: [x, x, ...]. Do not include any "
             "additional explanations or text.";
    case FslTask::mcqa:
      return "Please answer the questions based on the available choices, by filling in the empty 'answer' "
             "fields with the id number corresponding to the order of the choices. Provide the answers in a "
             "list format like this: [x, x, x, ..., x]. Do not include any additional explanations or text.";
  }
  return {};
}

std::vector<std::size_t> select_exemplars(const FslExampleBank& bank, std::uint64_t batch_index) {
  const std::size_t n = bank.size();
  if (n == 0) throw ValidationError("few-shot bank is empty");
  if (bank.shots == 0 || bank.shots > n)
    throw ValidationError("few-shot bank: shots must be in [1, " + std::to_string(n) + "], got " +
                          std::to_string(bank.shots));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (bank.sampling == ExemplarSampling::resample) {
    // Explicit Fisher-Yates keeps the draw identical across standard libraries.
    std::mt19937_64 rng(bank.seed ^ (0x9E3779B97F4A7C15ULL * (batch_index + 1)));
    for (std::size_t i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng() % (i + 1)]);
  }
  idx.resize(bank.shots);
  return idx;
}

std::string build_fsl_prompt(const FslExampleBank& bank, const FslQueries& queries, const FslPromptOptions& options) {
  const auto chosen = select_exemplars(bank, options.batch_index);
  const auto& l = bank.languages;
  std::string exemplars;
  std::string query_block;
  std::size_t query_count = 0;

  switch (bank.task) {
    case FslTask::mt: {
      const auto* bank_rows = std::get_if<std::vector<TranslationExample>>(&bank.examples);
      const auto* q = std::get_if<std::vector<std::string>>(&queries);
      if (!bank_rows || !q) throw ValidationError("mt prompt needs translation exemplars and source sentences");
      query_count = q->size();
      if (options.mt_query_count && query_count != *options.mt_query_count)
        throw ValidationError("mt prompt expects " + std::to_string(*options.mt_query_count) + " queries, got " +
                              std::to_string(query_count));
      std::vector<std::pair<std::string, std::string>> rows;
      for (auto i : chosen) rows.emplace_back((*bank_rows)[i].source, (*bank_rows)[i].target);
      exemplars = mt_block(l, rows);
      rows.clear();
      for (const auto& s : *q) rows.emplace_back(s, "");
      query_block = mt_block(l, rows);
      break;
    }
    case FslTask::sa: {
      const auto* bank_rows = std::get_if<corpus::SADataset>(&bank.examples);
      const auto* q = std::get_if<std::vector<std::string>>(&queries);
      if (!bank_rows || !q) throw ValidationError("sa prompt needs labelled reviews and review queries");
      query_count = q->size();
      std::vector<std::string> items;
      for (auto i : chosen) items.push_back(sa_item((*bank_rows)[i].text, (*bank_rows)[i].label));
      exemplars = braced(items);
      items.clear();
      for (const auto& s : *q) items.push_back(sa_item(s, std::nullopt));
      query_block = braced(items);
      break;
    }
    case FslTask::mcqa: {
      const auto* bank_rows = std::get_if<corpus::MCQADataset>(&bank.examples);
      const auto* q = std::get_if<corpus::MCQADataset>(&queries);
      if (!bank_rows || !q) throw ValidationError("mcqa prompt needs answered questions and question queries");
      query_count = q->size();
      std::vector<std::string> items;
      for (auto i : chosen) items.push_back(mcqa_item((*bank_rows)[i], true));
      exemplars = braced(items);
      items.clear();
      for (const auto& e : *q) items.push_back(mcqa_item(e, false));
      query_block = braced(items);
      break;
    }
  }
  if (query_count == 0) throw ValidationError("few-shot prompt needs at least one query");

  return fsl_header(bank) + "\n\n" + exemplars + "\n\n" + fsl_footer(bank, query_count) + "\n\n" + query_block + "\n";
}

}  // namespace cf::backends
