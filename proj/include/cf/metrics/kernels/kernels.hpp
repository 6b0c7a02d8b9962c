#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace cf::metrics::kernels {

/// Dot product of a and b together with the squared norms of both, from one pass.
/// Every variant accumulates the three sums with identical lane structure, so for a == b
/// the three results are bitwise equal.
struct DotNorms {
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
};

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

DotNorms dot_norms_scalar(const double* a, const double* b, std::size_t n) noexcept;
#if defined(CF_HAVE_AVX2_KERNELS)
DotNorms dot_norms_avx2(const double* a, const double* b, std::size_t n) noexcept;
#endif
#if defined(CF_HAVE_NEON_KERNELS)
DotNorms dot_norms_neon(const double* a, const double* b, std::size_t n) noexcept;
#endif

/// Whether this binary carries a kernel for `isa` and the running CPU supports it.
bool available(Isa isa) noexcept;

/// Best available ISA, unless CF_KERNELS=scalar is set in the environment.
Isa active_isa() noexcept;

/// Runs the kernel for `isa`; falls back to scalar when that ISA is not available.
DotNorms dot_norms(Isa isa, std::span<const double> a, std::span<const double> b) noexcept;

/// Runs the active kernel. Spans must have equal length (checked by callers).
DotNorms dot_norms(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace cf::metrics::kernels
