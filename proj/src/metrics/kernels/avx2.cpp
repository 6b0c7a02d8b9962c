#include <immintrin.h>

#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics::kernels {

// Separate multiply and add (no FMA) keeps rounding identical between dot and the norms.
DotNorms dot_norms_avx2(const double* a, const double* b, std::size_t n) noexcept {
  __m256d dot0 = _mm256_setzero_pd(), dot1 = _mm256_setzero_pd();
  __m256d aa0 = _mm256_setzero_pd(), aa1 = _mm256_setzero_pd();
  __m256d bb0 = _mm256_setzero_pd(), bb1 = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(a + i);
    const __m256d y0 = _mm256_loadu_pd(b + i);
    const __m256d x1 = _mm256_loadu_pd(a + i + 4);
    const __m256d y1 = _mm256_loadu_pd(b + i + 4);
    dot0 = _mm256_add_pd(dot0, _mm256_mul_pd(x0, y0));
    aa0 = _mm256_add_pd(aa0, _mm256_mul_pd(x0, x0));
    bb0 = _mm256_add_pd(bb0, _mm256_mul_pd(y0, y0));
    dot1 = _mm256_add_pd(dot1, _mm256_mul_pd(x1, y1));
    aa1 = _mm256_add_pd(aa1, _mm256_mul_pd(x1, x1));
    bb1 = _mm256_add_pd(bb1, _mm256_mul_pd(y1, y1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(a + i);
    const __m256d y = _mm256_loadu_pd(b + i);
    dot0 = _mm256_add_pd(dot0, _mm256_mul_pd(x, y));
    aa0 = _mm256_add_pd(aa0, _mm256_mul_pd(x, x));
    bb0 = _mm256_add_pd(bb0, _mm256_mul_pd(y, y));
  }

  auto reduce = [](__m256d lo, __m256d hi) {
    alignas(32) double t[4];
    _mm256_store_pd(t, _mm256_add_pd(lo, hi));
    return (t[0] + t[1]) + (t[2] + t[3]);
  };
  DotNorms r{reduce(dot0, dot1), reduce(aa0, aa1), reduce(bb0, bb1)};
  for (; i < n; ++i) {
    r.dot += a[i] * b[i];
    r.aa += a[i] * a[i];
    r.bb += b[i] * b[i];
  }
  return r;
}

}  // namespace cf::metrics::kernels
