#pragma once

#include "holoshape/kernels.hpp"

namespace holoshape::kernels::detail {

cplx dot_conj_scalar(std::span<const cplx> a, std::span<const cplx> b);
double norm_sq_scalar(std::span<const cplx> a);
void multiply_scalar(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void impose_amplitude_scalar(std::span<const cplx> f, std::span<const double> amp,
                             std::span<cplx> out);
double amplitude_mismatch_sq_scalar(std::span<const cplx> f, std::span<const double> amp,
                                    double scale);

// Tail helpers used by vector variants for the last few elements. They are
// the per-element bodies of the scalar loops above.
inline void multiply_one(const double* a, const double* b, double* out) {
  const double re = a[0] * b[0] - a[1] * b[1];
  const double im = a[0] * b[1] + a[1] * b[0];
  out[0] = re;
  out[1] = im;
}

void impose_amplitude_one(const double* f, double amp, double* out);

#if defined(HOLOSHAPE_HAVE_AVX2)
cplx dot_conj_avx2(std::span<const cplx> a, std::span<const cplx> b);
double norm_sq_avx2(std::span<const cplx> a);
void multiply_avx2(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void impose_amplitude_avx2(std::span<const cplx> f, std::span<const double> amp,
                           std::span<cplx> out);
double amplitude_mismatch_sq_avx2(std::span<const cplx> f, std::span<const double> amp,
                                  double scale);
#endif

}  // namespace holoshape::kernels::detail
