#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace holoshape::detail {

// Normalized 1D Gaussian taps, radius ceil(4 sigma).
inline std::vector<double> gaussian_taps(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-0.5 * (k * k) / (sigma * sigma));
    taps[k + radius] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable Gaussian blur with clamp-to-edge boundaries. sigma_x / sigma_y in
// samples; a non-positive sigma leaves that axis untouched.
template <class T>
std::vector<T> gaussian_blur(std::span<const T> data, std::size_t nx, std::size_t ny,
                             double sigma_x, double sigma_y) {
  std::vector<T> cur(data.begin(), data.end());
  auto pass = [&](double sigma, bool along_x) {
    if (!(sigma > 0.0)) return;
    const auto taps = gaussian_taps(sigma);
    const long radius = static_cast<long>(taps.size() / 2);
    std::vector<T> out(cur.size());
    const long n_axis = static_cast<long>(along_x ? nx : ny);
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        T acc{};
        const long pos = static_cast<long>(along_x ? i : j);
        for (long k = -radius; k <= radius; ++k) {
          const long q = std::clamp(pos + k, 0L, n_axis - 1);
          const std::size_t idx = along_x ? j * nx + static_cast<std::size_t>(q)
                                          : static_cast<std::size_t>(q) * nx + i;
          acc += taps[static_cast<std::size_t>(k + radius)] * cur[idx];
        }
        out[j * nx + i] = acc;
      }
    }
    cur = std::move(out);
  };
  pass(sigma_x, true);
  pass(sigma_y, false);
  return cur;
}

}  // namespace holoshape::detail
