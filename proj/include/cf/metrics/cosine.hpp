#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cf::metrics {

/// Sentence embedding. Values are finite; all vectors of one batch share a dimension.
class EmbeddingVector {
public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const EmbeddingVector&) const = default;

private:
  std::vector<double> values_;
};

/// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws ValidationError on a dimension
/// mismatch, an all-zero vector or non-finite values.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace cf::metrics
