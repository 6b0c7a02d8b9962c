#include "cf/metrics/meteor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "cf/common/error.hpp"

namespace cf::metrics {

Alignment exact_alignment(const TokenSequence& hyp, const TokenSequence& ref) {
  std::unordered_map<std::string_view, std::vector<std::size_t>> ref_positions;
  for (std::size_t j = 0; j < ref.size(); ++j) ref_positions[ref[j]].push_back(j);

  std::unordered_map<std::string_view, std::size_t> used;
  Alignment alignment;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    auto it = ref_positions.find(hyp[i]);
    if (it == ref_positions.end()) continue;
    auto& k = used[hyp[i]];
    if (k < it->second.size()) alignment.emplace_back(i, it->second[k++]);
  }
  return alignment;
}

std::size_t count_chunks(const Alignment& alignment) {
  if (alignment.empty()) return 0;
  std::size_t chunks = 1;
  for (std::size_t k = 1; k < alignment.size(); ++k) {
    const auto& [h0, r0] = alignment[k - 1];
    const auto& [h1, r1] = alignment[k];
    if (h1 != h0 + 1 || r1 != r0 + 1) ++chunks;
  }
  return chunks;
}

double meteor_tokens(const TokenSequence& hyp, const TokenSequence& ref, const MeteorParams& p) {
  if (ref.empty()) throw ValidationError("METEOR reference is empty");
  if (hyp.empty()) return 0.0;
  const auto alignment = exact_alignment(hyp, ref);
  if (alignment.empty()) return 0.0;

  const auto matches = static_cast<double>(alignment.size());
  const auto chunks = static_cast<double>(count_chunks(alignment));
  const double precision = matches / static_cast<double>(hyp.size());
  const double recall = matches / static_cast<double>(ref.size());
  const double fmean = precision * recall / (p.alpha * precision + (1.0 - p.alpha) * recall);
  // chunks^beta and matches^beta are exact for integral beta, so the ratio is correctly rounded
  const double fragmentation = std::pow(chunks, p.beta) / std::pow(matches, p.beta);
  const double penalty = p.gamma * fragmentation;
  return std::clamp(fmean * (1.0 - penalty), 0.0, 1.0);
}

double meteor(std::string_view hyp, std::string_view ref, const MeteorParams& params) {
  return meteor_tokens(tokenize(hyp), tokenize(ref), params);
}

}  // namespace cf::metrics
