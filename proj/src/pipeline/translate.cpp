#include "cf/pipeline/translate.hpp"

#include <set>

#include "cf/common/error.hpp"
#include "cf/common/utf8.hpp"
#include "cf/pipeline/render.hpp"

namespace cf::pipeline {

namespace {

std::vector<std::string> flatten(const FieldGroups& groups) {
  std::vector<std::string> flat;
  for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
  return flat;
}

FieldGroups regroup(const FieldGroups& shape, std::vector<std::string> flat) {
  FieldGroups out;
  out.reserve(shape.size());
  std::size_t k = 0;
  for (const auto& g : shape) {
    std::vector<std::string> fields;
    fields.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) fields.push_back(std::move(flat[k++]));
    out.push_back(std::move(fields));
  }
  return out;
}

template <typename Dataset>
FieldGroups groups_of(const Dataset& dataset) {
  FieldGroups groups;
  groups.reserve(dataset.size());
  for (const auto& e : dataset) groups.push_back(text_fields(e));
  return groups;
}

template <typename Dataset>
Dataset rebuild(const Dataset& dataset, FieldGroups groups) {
  Dataset out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) out.push_back(with_text_fields(dataset[i], std::move(groups[i])));
  return out;
}

template <typename Dataset>
Dataset rewrite_impl(const Dataset& dataset, const backends::BackendClient& chat, std::string_view instruction) {
  if (dataset.empty()) return {};
  const auto groups = groups_of(dataset);
  return rebuild(dataset, regroup(groups, backends::llm_rewrite(chat, flatten(groups), instruction)));
}

}  // namespace

FieldGroups translate_fields(const backends::BackendClient& translator, const FieldGroups& groups,
                             std::string_view src_lang, std::string_view tgt_lang) {
  const auto flat = flatten(groups);
  if (flat.empty()) return FieldGroups(groups.size());
  return regroup(groups, backends::translate_batch(translator, flat, src_lang, tgt_lang));
}

corpus::SADataset translate_dataset(const corpus::SADataset& dataset, const backends::BackendClient& translator,
                                    std::string_view src_lang, std::string_view tgt_lang) {
  return rebuild(dataset, translate_fields(translator, groups_of(dataset), src_lang, tgt_lang));
}

corpus::MCQADataset translate_dataset(const corpus::MCQADataset& dataset,
                                      const backends::BackendClient& translator, std::string_view src_lang,
                                      std::string_view tgt_lang) {
  return rebuild(dataset, translate_fields(translator, groups_of(dataset), src_lang, tgt_lang));
}

corpus::SADataset rewrite_dataset(const corpus::SADataset& dataset, const backends::BackendClient& chat,
                                  std::string_view instruction) {
  return rewrite_impl(dataset, chat, instruction);
}

corpus::MCQADataset rewrite_dataset(const corpus::MCQADataset& dataset, const backends::BackendClient& chat,
                                    std::string_view instruction) {
  return rewrite_impl(dataset, chat, instruction);
}

std::string translation_defect(const corpus::SAEntry& translated) {
  if (utf8::trim(translated.text).empty()) return "empty translation";
  if (translated.text.find('\n') != std::string::npos) return "newline in translated field";
  return {};
}

std::string translation_defect(const corpus::MCQAEntry& translated) {
  std::set<std::string> seen;
  for (const auto& field : text_fields(translated)) {
    if (utf8::trim(field).empty()) return "empty translation";
    if (field.find('\n') != std::string::npos) return "newline in translated field";
  }
  for (const auto& c : translated.choices)
    if (!seen.insert(c).second) return "translated choices collide";
  return {};
}

}  // namespace cf::pipeline
