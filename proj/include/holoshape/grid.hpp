#pragma once

#include <cstddef>

namespace holoshape {

// Uniform 2D sampling lattice centered on the optical axis. Sample (i, j)
// sits at ((i - nx/2)·dx, (j - ny/2)·dy); for even sizes sample (nx/2, ny/2)
// is the origin, which is also the zero-frequency bin of the centered DFT.
// All lengths are meters.
class GridSpec {
 public:
  GridSpec(std::size_t nx, std::size_t ny, double dx, double dy);
  static GridSpec square(std::size_t n, double pitch) { return {n, n, pitch, pitch}; }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  double cell_area() const noexcept { return dx_ * dy_; }
  double extent_x() const noexcept { return static_cast<double>(nx_) * dx_; }
  double extent_y() const noexcept { return static_cast<double>(ny_) * dy_; }

  double x(std::size_t i) const noexcept {
    return (static_cast<double>(i) - static_cast<double>(nx_ / 2)) * dx_;
  }
  double y(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(ny_ / 2)) * dy_;
  }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }

  bool same_shape(const GridSpec& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_;
  }
  bool same_pitch(const GridSpec& other) const noexcept;
  bool operator==(const GridSpec& other) const noexcept {
    return same_shape(other) && same_pitch(other);
  }

  GridSpec with_pitch(double dx, double dy) const { return {nx_, ny_, dx, dy}; }

 private:
  std::size_t nx_;
  std::size_t ny_;
  double dx_;
  double dy_;
};

// Throws GridMismatch unless a and b describe the same lattice.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* context);

}  // namespace holoshape
