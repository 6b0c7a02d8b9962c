#include "cf/metrics/cosine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cf/common/error.hpp"
#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  if (a.empty()) throw ValidationError("cosine: empty vectors");

  const auto r = kernels::dot_norms(a, b);
  if (!std::isfinite(r.dot) || !std::isfinite(r.aa) || !std::isfinite(r.bb))
    throw ValidationError("cosine: non-finite values");
  if (r.aa == 0.0 || r.bb == 0.0) throw ValidationError("cosine: zero vector");

  // sqrt(x * x) == x holds exactly, so identical vectors score exactly 1
  double denom = std::sqrt(r.aa * r.bb);
  if (!std::isfinite(denom) || denom == 0.0) denom = std::sqrt(r.aa) * std::sqrt(r.bb);
  return std::clamp(r.dot / denom, -1.0, 1.0);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine_similarity(a.values(), b.values());
}

}  // namespace cf::metrics
