#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics::kernels {

// Four interleaved accumulators mirror the 4-lane vector kernels.
DotNorms dot_norms_scalar(const double* a, const double* b, std::size_t n) noexcept {
  double dot[4] = {0, 0, 0, 0};
  double aa[4] = {0, 0, 0, 0};
  double bb[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double x = a[i + l];
      const double y = b[i + l];
      dot[l] += x * y;
      aa[l] += x * x;
      bb[l] += y * y;
    }
  }
  DotNorms r{(dot[0] + dot[1]) + (dot[2] + dot[3]), (aa[0] + aa[1]) + (aa[2] + aa[3]),
             (bb[0] + bb[1]) + (bb[2] + bb[3])};
  for (; i < n; ++i) {
    r.dot += a[i] * b[i];
    r.aa += a[i] * a[i];
    r.bb += b[i] * b[i];
  }
  return r;
}

}  // namespace cf::metrics::kernels
