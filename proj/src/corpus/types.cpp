#include "cf/corpus/types.hpp"

#include <set>

#include "cf/common/error.hpp"
#include "cf/common/utf8.hpp"

namespace cf::corpus {

std::string_view to_string(DatasetKind kind) noexcept {
  switch (kind) {
    case DatasetKind::sa: return "sa";
    case DatasetKind::mcqa: return "mcqa";
    case DatasetKind::parallel: return "parallel";
  }
  return "?";
}

DatasetKind parse_kind(std::string_view name) {
  if (name == "sa") return DatasetKind::sa;
  if (name == "mcqa") return DatasetKind::mcqa;
  if (name == "parallel") return DatasetKind::parallel;
  throw ValidationError("unknown dataset kind '" + std::string(name) + "' (expected sa, mcqa or parallel)");
}

DatasetKind kind_of(const Dataset& dataset) noexcept {
  return static_cast<DatasetKind>(dataset.index());
}

std::size_t size_of(const Dataset& dataset) noexcept {
  return std::visit([](const auto& d) { return d.size(); }, dataset);
}

namespace {
bool blank(std::string_view s) { return utf8::trim(s).empty(); }
}  // namespace

std::string validate(const SAEntry& e, Strictness s) {
  if (e.label != kPositive && e.label != kNegative)
    return "label must be 0 (positive) or 1 (negative), got " + std::to_string(e.label);
  if (s == Strictness::strict && blank(e.text)) return "text is empty";
  return {};
}

std::string validate(const MCQAEntry& e, Strictness s) {
  if (e.choices.empty()) return "choices is empty";
  if (e.answer < 0 || static_cast<std::size_t>(e.answer) >= e.choices.size())
    return "answer " + std::to_string(e.answer) + " out of range for " +
           std::to_string(e.choices.size()) + " choices";
  if (s == Strictness::relaxed) return {};
  if (blank(e.question)) return "question is empty";
  if (e.choices.size() < 2) return "at least two choices are required";
  std::set<std::string> seen;
  for (const auto& c : e.choices) {
    if (blank(c)) return "empty choice";
    if (!seen.insert(c).second) return "duplicate choice '" + c + "'";
  }
  return {};
}

std::string validate(const ParallelPair& p, Strictness s) {
  if (p.src_lang.empty() || p.tgt_lang.empty()) return "language tags are required";
  if (p.src_lang == p.tgt_lang) return "src_lang and tgt_lang must differ";
  if (s == Strictness::strict) {
    if (blank(p.src)) return "src is empty";
    if (blank(p.tgt)) return "tgt is empty";
  }
  return {};
}

}  // namespace cf::corpus
