#include "cf/metrics/rouge.hpp"

#include <algorithm>
#include <vector>

#include "cf/common/error.hpp"

namespace cf::metrics {

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(std::string_view hyp, std::string_view ref) {
  const auto ref_tokens = tokenize(ref);
  if (ref_tokens.empty()) throw ValidationError("ROUGE-L reference is empty");
  const auto hyp_tokens = tokenize(hyp);
  if (hyp_tokens.empty()) return 0.0;
  const auto lcs = static_cast<double>(lcs_length(hyp_tokens, ref_tokens));
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(hyp_tokens.size());
  const double recall = lcs / static_cast<double>(ref_tokens.size());
  return 100.0 * (2.0 * precision * recall / (precision + recall));
}

}  // namespace cf::metrics
