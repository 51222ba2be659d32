#include <cmath>

#include "kernels_impl.hpp"

namespace holoshape::kernels::detail {

namespace {
const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }
double* raw(std::span<cplx> s) { return reinterpret_cast<double*>(s.data()); }
}  // namespace

cplx dot_conj_scalar(std::span<const cplx> a, std::span<const cplx> b) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double ar = pa[2 * k], ai = pa[2 * k + 1];
    const double br = pb[2 * k], bi = pb[2 * k + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_sq_scalar(std::span<const cplx> a) {
  const double* p = raw(a);
  double acc = 0.0;
  for (std::size_t k = 0; k < 2 * a.size(); ++k) acc += p[k] * p[k];
  return acc;
}

void multiply_scalar(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const double* pa = raw(a);
  const double* pb = raw(b);
  double* po = raw(out);
  for (std::size_t k = 0; k < a.size(); ++k) multiply_one(pa + 2 * k, pb + 2 * k, po + 2 * k);
}

void impose_amplitude_one(const double* f, double amp, double* out) {
  const double mag = std::sqrt(f[0] * f[0] + f[1] * f[1]);
  if (mag > 0.0) {
    const double s = amp / mag;
    out[0] = f[0] * s;
    out[1] = f[1] * s;
  } else {
    out[0] = amp;
    out[1] = 0.0;
  }
}

void impose_amplitude_scalar(std::span<const cplx> f, std::span<const double> amp,
                             std::span<cplx> out) {
  const double* pf = raw(f);
  double* po = raw(out);
  for (std::size_t k = 0; k < f.size(); ++k) impose_amplitude_one(pf + 2 * k, amp[k], po + 2 * k);
}

double amplitude_mismatch_sq_scalar(std::span<const cplx> f, std::span<const double> amp,
                                    double scale) {
  const double* pf = raw(f);
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double mag = std::sqrt(pf[2 * k] * pf[2 * k] + pf[2 * k + 1] * pf[2 * k + 1]);
    const double d = scale * mag - amp[k];
    acc += d * d;
  }
  return acc;
}

}  // namespace holoshape::kernels::detail
