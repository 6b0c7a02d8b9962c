#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cf/common/error.hpp"
#include "cf/metrics/cosine.hpp"
#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics {
namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double abs_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
  return s;
}

TEST(Kernels, ScalarMatchesNaiveSums) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{-1, 0.5, 2, 0, 1};
  const auto r = kernels::dot_norms_scalar(a.data(), b.data(), a.size());
  EXPECT_EQ(r.dot, -1 + 1 + 6 + 0 + 5);
  EXPECT_EQ(r.aa, 55.0);
  EXPECT_EQ(r.bb, 1 + 0.25 + 4 + 0 + 1);
  const auto empty = kernels::dot_norms_scalar(a.data(), b.data(), 0);
  EXPECT_EQ(empty.dot, 0.0);
}

TEST(Kernels, EveryAvailableIsaAgreesWithScalar) {
  std::mt19937_64 rng(11);
  for (const auto isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
    if (!kernels::available(isa)) continue;
    SCOPED_TRACE(std::string(kernels::to_string(isa)));
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 384u, 768u, 1001u}) {
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n, 3.0);
      const auto ref = kernels::dot_norms_scalar(a.data(), b.data(), n);
      const auto got = kernels::dot_norms(isa, a, b);
      const double eps = 1e-13;
      EXPECT_NEAR(got.dot, ref.dot, eps * abs_sum(a, b)) << n;
      EXPECT_NEAR(got.aa, ref.aa, eps * ref.aa) << n;
      EXPECT_NEAR(got.bb, ref.bb, eps * ref.bb) << n;
    }
  }
}

TEST(Kernels, SmallIntegersAreExactOnEveryIsa) {
  std::mt19937_64 rng(3);
  for (const auto isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
    if (!kernels::available(isa)) continue;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + rng() % 40;
      std::vector<double> a(n), b(n);
      long long dot = 0, aa = 0, bb = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = static_cast<long long>(rng() % 21) - 10;
        const auto y = static_cast<long long>(rng() % 21) - 10;
        a[i] = static_cast<double>(x);
        b[i] = static_cast<double>(y);
        dot += x * y;
        aa += x * x;
        bb += y * y;
      }
      const auto r = kernels::dot_norms(isa, a, b);
      EXPECT_EQ(r.dot, static_cast<double>(dot));
      EXPECT_EQ(r.aa, static_cast<double>(aa));
      EXPECT_EQ(r.bb, static_cast<double>(bb));
    }
  }
}

TEST(Kernels, ScalarIsAlwaysAvailableAndActiveIsAvailable) {
  EXPECT_TRUE(kernels::available(kernels::Isa::scalar));
  EXPECT_TRUE(kernels::available(kernels::active_isa()));
}

TEST(Cosine, IdentityIsExactlyOne) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 1000; ++t) {
    const auto v = random_vector(rng, 1 + rng() % 64, std::pow(10.0, static_cast<double>(rng() % 9) - 4.0));
    EXPECT_EQ(cosine_similarity(v, v), 1.0);
  }
}

TEST(Cosine, KnownValuesAndRange) {
  const std::vector<double> a{1, 0};
  const std::vector<double> b{0, 1};
  const std::vector<double> c{-2, 0};
  EXPECT_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_EQ(cosine_similarity(a, c), -1.0);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 20;
    const double c2 = cosine_similarity(random_vector(rng, n), random_vector(rng, n));
    EXPECT_GE(c2, -1.0);
    EXPECT_LE(c2, 1.0);
  }
}

TEST(Cosine, RejectsInvalidInput) {
  const std::vector<double> a{1, 2};
  const std::vector<double> b{1, 2, 3};
  const std::vector<double> zero{0, 0};
  const std::vector<double> nan{std::nan(""), 1};
  EXPECT_THROW(cosine_similarity(a, b), ValidationError);
  EXPECT_THROW(cosine_similarity(a, zero), ValidationError);
  EXPECT_THROW(cosine_similarity(a, nan), ValidationError);
  EXPECT_THROW(cosine_similarity(std::vector<double>{}, std::vector<double>{}), ValidationError);
}

}  // namespace
}  // namespace cf::metrics
