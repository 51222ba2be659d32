#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holoshape::fft {

using cplx = std::complex<double>;

enum class Direction { Forward, Inverse };  // exp(-i...) / exp(+i...)

// Unnormalized 2D DFT in place; data is row-major ny rows of nx.
void transform(std::span<cplx> data, std::size_t nx, std::size_t ny, Direction dir);

// Unitary DFT about the center sample (index n/2 on each axis):
//   F[k] = N^-1/2 · sum_j f[j] · exp(∓2πi (j - n/2)(k - n/2) / n)
std::vector<cplx> centered(std::span<const cplx> data, std::size_t nx, std::size_t ny,
                           Direction dir);

// Signed frequency index of DFT bin k in standard (uncentered) order.
inline long signed_bin(std::size_t k, std::size_t n) {
  return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace holoshape::fft
