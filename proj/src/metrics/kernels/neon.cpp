#include <arm_neon.h>

#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics::kernels {

DotNorms dot_norms_neon(const double* a, const double* b, std::size_t n) noexcept {
  float64x2_t dot0 = vdupq_n_f64(0), dot1 = vdupq_n_f64(0);
  float64x2_t aa0 = vdupq_n_f64(0), aa1 = vdupq_n_f64(0);
  float64x2_t bb0 = vdupq_n_f64(0), bb1 = vdupq_n_f64(0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t x0 = vld1q_f64(a + i);
    const float64x2_t y0 = vld1q_f64(b + i);
    const float64x2_t x1 = vld1q_f64(a + i + 2);
    const float64x2_t y1 = vld1q_f64(b + i + 2);
    dot0 = vaddq_f64(dot0, vmulq_f64(x0, y0));
    aa0 = vaddq_f64(aa0, vmulq_f64(x0, x0));
    bb0 = vaddq_f64(bb0, vmulq_f64(y0, y0));
    dot1 = vaddq_f64(dot1, vmulq_f64(x1, y1));
    aa1 = vaddq_f64(aa1, vmulq_f64(x1, x1));
    bb1 = vaddq_f64(bb1, vmulq_f64(y1, y1));
  }
  auto reduce = [](float64x2_t lo, float64x2_t hi) {
    return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(hi, 0)) + (vgetq_lane_f64(lo, 1) + vgetq_lane_f64(hi, 1));
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
