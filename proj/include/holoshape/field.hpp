#pragma once

#include <complex>
#include <span>
#include <vector>

#include "holoshape/grid.hpp"

namespace holoshape {

using cplx = std::complex<double>;

inline constexpr double kDefaultWavelength = 1080e-9;

// Complex scalar field sampled on a GridSpec, row-major (index j*nx + i).
// Values are immutable once constructed; operations return new fields.
class ComplexField {
 public:
  ComplexField(GridSpec grid, std::vector<cplx> samples, double wavelength = kDefaultWavelength);
  static ComplexField zeros(GridSpec grid, double wavelength = kDefaultWavelength);

  // Samples f(x, y) at every grid point.
  template <class Fn>
  static ComplexField sample(const GridSpec& grid, double wavelength, Fn&& fn) {
    std::vector<cplx> s(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double y = grid.y(j);
      for (std::size_t i = 0; i < grid.nx(); ++i) s[grid.index(i, j)] = fn(grid.x(i), y);
    }
    return ComplexField(grid, std::move(s), wavelength);
  }

  const GridSpec& grid() const noexcept { return grid_; }
  double wavelength() const noexcept { return wavelength_; }
  std::span<const cplx> samples() const noexcept { return samples_; }
  const cplx& at(std::size_t i, std::size_t j) const { return samples_[grid_.index(i, j)]; }

  // Same samples on a relabelled lattice (shape must match).
  ComplexField with_grid(const GridSpec& grid) const;
  ComplexField with_wavelength(double wavelength) const;

 private:
  GridSpec grid_;
  std::vector<cplx> samples_;
  double wavelength_;
};

// Real-valued map on a grid: intensities, amplitudes, phases in radians.
class RealField {
 public:
  RealField(GridSpec grid, std::vector<double> values);
  static RealField zeros(GridSpec grid);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Riemann sum of conj(a)·b over the plane.
cplx inner_product(const ComplexField& a, const ComplexField& b);
double power(const ComplexField& a);
// Unit-power copy; throws ZeroField for an all-zero input.
ComplexField normalize(const ComplexField& a);

ComplexField scale(const ComplexField& a, cplx factor);
ComplexField add(const ComplexField& a, const ComplexField& b);
ComplexField multiply(const ComplexField& a, const ComplexField& b);

RealField amplitude(const ComplexField& a);
RealField intensity(const ComplexField& a);
RealField phase(const ComplexField& a);
// amp · exp(i·phase)
ComplexField polar(const RealField& amp, const RealField& phase, double wavelength);

struct CropPadResult {
  ComplexField field;
  double discarded_fraction;  // share of input power outside the target window
};

// Centered copy of `a` on `target`, which must have the same pitch.
CropPadResult crop_or_pad(const ComplexField& a, const GridSpec& target);

}  // namespace holoshape
