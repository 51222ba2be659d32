#pragma once

#include <complex>
#include <span>
#include <string_view>

namespace holoshape::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops shared by every module. Each entry has a scalar
// reference implementation and, where the CPU supports it, an AVX2 variant.
// Pointwise kernels are bit-identical across variants; reductions agree to
// rounding (summation order differs).
struct KernelTable {
  std::string_view name;
  // sum_k conj(a_k) * b_k
  cplx (*dot_conj)(std::span<const cplx> a, std::span<const cplx> b);
  // sum_k |a_k|^2
  double (*norm_sq)(std::span<const cplx> a);
  // out_k = a_k * b_k
  void (*multiply)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
  // out_k = amp_k * f_k / |f_k|, and amp_k where f_k == 0
  void (*impose_amplitude)(std::span<const cplx> f, std::span<const double> amp,
                           std::span<cplx> out);
  // sum_k (scale * |f_k| - amp_k)^2
  double (*amplitude_mismatch_sq)(std::span<const cplx> f, std::span<const double> amp,
                                  double scale);
};

const KernelTable& scalar_table();
// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2_table();

// Table used by the library. Picks AVX2 when available unless the
// HOLOSHAPE_SIMD environment variable is set to "scalar".
const KernelTable& active();

inline cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dot_conj(a, b);
}
inline double norm_sq(std::span<const cplx> a) { return active().norm_sq(a); }
inline void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().multiply(a, b, out);
}
inline void impose_amplitude(std::span<const cplx> f, std::span<const double> amp,
                             std::span<cplx> out) {
  active().impose_amplitude(f, amp, out);
}
inline double amplitude_mismatch_sq(std::span<const cplx> f, std::span<const double> amp,
                                    double scale) {
  return active().amplitude_mismatch_sq(f, amp, scale);
}

}  // namespace holoshape::kernels
