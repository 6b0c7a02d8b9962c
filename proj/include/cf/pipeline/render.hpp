#pragma once

#include <string>
#include <vector>

#include "cf/corpus/types.hpp"

namespace cf::pipeline {

/// Text used for embedding and round-trip scoring of one entry. SA: the review text.
/// MCQA: question and choices joined by single newlines; the answer index is never included.
std::string render_flat_text(const corpus::SAEntry& entry);
std::string render_flat_text(const corpus::MCQAEntry& entry);

/// Text fields sent to the translator, in order: SA [text]; MCQA [question, choices...].
std::vector<std::string> text_fields(const corpus::SAEntry& entry);
std::vector<std::string> text_fields(const corpus::MCQAEntry& entry);

/// Copy of `entry` with its text fields replaced; id, label and answer are kept.
corpus::SAEntry with_text_fields(const corpus::SAEntry& entry, std::vector<std::string> fields);
corpus::MCQAEntry with_text_fields(const corpus::MCQAEntry& entry, std::vector<std::string> fields);

/// Inverse of the MCQA rendering for newline-free fields: question followed by choices.
std::vector<std::string> split_rendered(const std::string& text);

}  // namespace cf::pipeline
