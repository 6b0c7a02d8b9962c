#include <cstdlib>
#include <cstring>

#include "cf/metrics/kernels/kernels.hpp"

namespace cf::metrics::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(CF_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(CF_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa isa = [] {
    const char* forced = std::getenv("CF_KERNELS");
    if (forced && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    if (available(Isa::avx2)) return Isa::avx2;
    if (available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
  }();
  return isa;
}

DotNorms dot_norms(Isa isa, std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  if (!available(isa)) isa = Isa::scalar;
  switch (isa) {
#if defined(CF_HAVE_AVX2_KERNELS)
    case Isa::avx2: return dot_norms_avx2(a.data(), b.data(), n);
#endif
#if defined(CF_HAVE_NEON_KERNELS)
    case Isa::neon: return dot_norms_neon(a.data(), b.data(), n);
#endif
    default: return dot_norms_scalar(a.data(), b.data(), n);
  }
}

DotNorms dot_norms(std::span<const double> a, std::span<const double> b) noexcept {
  return dot_norms(active_isa(), a, b);
}

}  // namespace cf::metrics::kernels
