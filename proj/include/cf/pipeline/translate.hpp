#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cf/backends/client.hpp"
#include "cf/corpus/types.hpp"

namespace cf::pipeline {

using FieldGroups = std::vector<std::vector<std::string>>;

/// Translates every field of every group in one batched call and regroups the output.
FieldGroups translate_fields(const backends::BackendClient& translator, const FieldGroups& groups,
                             std::string_view src_lang, std::string_view tgt_lang);

/// Field-wise translation; ids, labels and answers are carried over unchanged.
corpus::SADataset translate_dataset(const corpus::SADataset& dataset, const backends::BackendClient& translator,
                                    std::string_view src_lang, std::string_view tgt_lang);
corpus::MCQADataset translate_dataset(const corpus::MCQADataset& dataset,
                                      const backends::BackendClient& translator, std::string_view src_lang,
                                      std::string_view tgt_lang);

/// Field-wise llm_rewrite.
corpus::SADataset rewrite_dataset(const corpus::SADataset& dataset, const backends::BackendClient& chat,
                                  std::string_view instruction);
corpus::MCQADataset rewrite_dataset(const corpus::MCQADataset& dataset, const backends::BackendClient& chat,
                                    std::string_view instruction);

/// Why a translated entry cannot be scored, or "" when it can: blank fields, colliding
/// choices, or a field containing a newline (which would break the flat rendering).
std::string translation_defect(const corpus::SAEntry& translated);
std::string translation_defect(const corpus::MCQAEntry& translated);

}  // namespace cf::pipeline
