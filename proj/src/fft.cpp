#include "holoshape/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace holoshape::fft {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// Plans are created once per shape with FFTW_ESTIMATE, which keeps the
// chosen algorithm (and so the rounding) independent of timing.
class PlanCache {
 public:
  fftw_plan get(std::size_t nx, std::size_t ny, Direction dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(nx, ny, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    Buffer in = allocate(nx * ny);
    Buffer out = allocate(nx * ny);
    fftw_plan p = fftw_plan_dft_2d(static_cast<int>(ny), static_cast<int>(nx), in.get(), out.get(),
                                   dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
    plans_.emplace(key, p);
    return p;
  }
  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const cplx* src, cplx* dst, std::size_t nx, std::size_t ny, Direction dir) {
  const std::size_t n = nx * ny;
  fftw_plan plan = cache().get(nx, ny, dir);
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  std::memcpy(in.get(), src, n * sizeof(cplx));
  fftw_execute_dft(plan, in.get(), out.get());
  std::memcpy(static_cast<void*>(dst), out.get(), n * sizeof(cplx));
}

}  // namespace

void transform(std::span<cplx> data, std::size_t nx, std::size_t ny, Direction dir) {
  run(data.data(), data.data(), nx, ny, dir);
}

std::vector<cplx> centered(std::span<const cplx> data, std::size_t nx, std::size_t ny,
                           Direction dir) {
  const std::size_t cx = nx / 2;
  const std::size_t cy = ny / 2;
  std::vector<cplx> work(nx * ny);
  // Move the center sample to index 0.
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t jj = (j + ny - cy) % ny;
    for (std::size_t i = 0; i < nx; ++i) work[jj * nx + (i + nx - cx) % nx] = data[j * nx + i];
  }
  transform(work, nx, ny, dir);
  const double norm = 1.0 / std::sqrt(static_cast<double>(nx * ny));
  std::vector<cplx> out(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t jj = (j + cy) % ny;
    for (std::size_t i = 0; i < nx; ++i) out[jj * nx + (i + cx) % nx] = work[j * nx + i] * norm;
  }
  return out;
}

}  // namespace holoshape::fft
