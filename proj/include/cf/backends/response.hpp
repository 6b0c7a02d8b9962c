#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cf/backends/prompts.hpp"
#include "cf/common/error.hpp"

namespace cf::backends {

/// A model reply that violates the output contract. Keeps the raw text for the audit trail.
class FslResponseError : public DataError {
public:
  enum class Kind { parse, count, value };

  FslResponseError(Kind kind, const std::string& what, std::string raw)
      : DataError(what), kind_(kind), raw_(std::move(raw)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& raw() const noexcept { return raw_; }

private:
  Kind kind_;
  std::string raw_;
};

struct FslParseOptions {
  std::string target_field = "Ladin";                 // mt: field holding the translation
  std::optional<std::vector<std::size_t>> choice_counts;  // mcqa: per-query number of choices
};

/// mt: translations (strings); sa/mcqa: labels or answer indices.
using FslAnswers = std::variant<std::vector<std::string>, std::vector<int>>;

/// Removes surrounding whitespace and a ``` / ```json fence if present.
std::string strip_code_fence(std::string_view raw);

/// Extracts exactly `expected_n` answers. Throws FslResponseError.
FslAnswers parse_fsl_response(std::string_view raw, FslTask task, std::size_t expected_n,
                              const FslParseOptions& options = {});

}  // namespace cf::backends
