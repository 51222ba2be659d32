#include "kernels_impl.hpp"

#if defined(HOLOSHAPE_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace holoshape::kernels::detail {

namespace {

const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }
double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [a0, a1] -> [a0, a0, a1, a1]
__m256d load_dup_pair(const double* p) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(p)), 0x50);
}

// [|z0|, |z0|, |z1|, |z1|] for two interleaved complex numbers.
__m256d modulus_pairs(__m256d v) {
  const __m256d sq = _mm256_mul_pd(v, v);
  return _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
}

}  // namespace

cplx dot_conj_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  const std::size_t n = a.size();
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(va, vb));
    // [ar*bi, ai*br, ...]
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(va, _mm256_permute_pd(vb, 0x5)));
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; k < n; ++k) {
    const double ar = pa[2 * k], ai = pa[2 * k + 1];
    const double br = pb[2 * k], bi = pb[2 * k + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq_avx2(std::span<const cplx> a) {
  const double* p = raw(a);
  const std::size_t n = 2 * a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + k);
    const __m256d v1 = _mm256_loadu_pd(p + k + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) acc += p[k] * p[k];
  return acc;
}

void multiply_avx2(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  double* po = raw(out);
  const std::size_t n = a.size();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    const __m256d re_dup = _mm256_movedup_pd(va);
    const __m256d im_dup = _mm256_permute_pd(va, 0xF);
    const __m256d t1 = _mm256_mul_pd(re_dup, vb);
    const __m256d t2 = _mm256_mul_pd(im_dup, _mm256_permute_pd(vb, 0x5));
    _mm256_storeu_pd(po + 2 * k, _mm256_addsub_pd(t1, t2));
  }
  for (; k < n; ++k) multiply_one(pa + 2 * k, pb + 2 * k, po + 2 * k);
}

void impose_amplitude_avx2(std::span<const cplx> f, std::span<const double> amp,
                           std::span<cplx> out) {
  const double* pf = raw(f);
  double* po = raw(out);
  const std::size_t n = f.size();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d v = _mm256_loadu_pd(pf + 2 * k);
    const __m256d mag = modulus_pairs(v);
    const __m256d a = load_dup_pair(amp.data() + k);
    const __m256d scaled = _mm256_mul_pd(v, _mm256_div_pd(a, mag));
    const __m256d fallback = _mm256_blend_pd(a, zero, 0xA);
    const __m256d is_zero = _mm256_cmp_pd(mag, zero, _CMP_EQ_OQ);
    _mm256_storeu_pd(po + 2 * k, _mm256_blendv_pd(scaled, fallback, is_zero));
  }
  for (; k < n; ++k) impose_amplitude_one(pf + 2 * k, amp[k], po + 2 * k);
}

double amplitude_mismatch_sq_avx2(std::span<const cplx> f, std::span<const double> amp,
                                  double scale) {
  const double* pf = raw(f);
  const std::size_t n = f.size();
  const __m256d vs = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d mag = modulus_pairs(_mm256_loadu_pd(pf + 2 * k));
    const __m256d d = _mm256_sub_pd(_mm256_mul_pd(vs, mag), load_dup_pair(amp.data() + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  // Every lane pair holds a duplicated term.
  double total = 0.5 * hsum(acc);
  for (; k < n; ++k) {
    const double mag = std::sqrt(pf[2 * k] * pf[2 * k] + pf[2 * k + 1] * pf[2 * k + 1]);
    const double d = scale * mag - amp[k];
    total += d * d;
  }
  return total;
}

}  // namespace holoshape::kernels::detail

#endif
